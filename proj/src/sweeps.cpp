#include "couplinglab/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "couplinglab/errors.hpp"
#include "couplinglab/version.hpp"

namespace couplinglab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string model_list(const std::vector<ModelKind>& models) {
  std::string out;
  for (const auto m : models) {
    if (!out.empty()) out += ';';
    out += to_string(m);
  }
  return out;
}

// Runs body(i) for i in [0, n) on up to `threads` workers. The first
// exception is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t n, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void append_factor_columns(std::vector<std::string>& header, const std::vector<ModelKind>& models) {
  for (const auto m : models) {
    header.push_back("ox_" + std::string(to_string(m)));
    header.push_back("oz_" + std::string(to_string(m)));
  }
}

double max_relative_change(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double scale = 0.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  double drift = 0.0;
  for (std::size_t i = 0; i < 3; ++i) drift = std::max(drift, std::abs(a[i] - b[i]) / scale);
  return drift;
}

double max_abs_change(const std::vector<double>& a, const std::vector<double>& b) {
  double drift = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i])) {
      if (std::isnan(a[i]) != std::isnan(b[i])) return kNaN;
      continue;
    }
    drift = std::max(drift, std::abs(a[i] - b[i]));
  }
  return drift;
}

const std::vector<ModelKind> kAllModels{ModelKind::CriticalCurrent, ModelKind::Dipole,
                                        ModelKind::FluxFluctuator};

ConvergenceRung phase_rung(const PhaseQubitParams& params, int n_points, const BasisOverrides& base) {
  BasisOverrides o = base;
  o.phase_points = static_cast<std::size_t>(n_points);
  const PhaseGrid grid = phase_grid_for(params.bias, o);
  const PhasePoint point = evaluate_phase_point(params, grid, kAllModels);
  ConvergenceRung rung;
  rung.resolution = n_points;
  rung.basis_size = grid.n_points;
  for (std::size_t i = 0; i < 3; ++i) rung.energies[i] = point.solution.energies.at(i);
  for (const auto& [kind, f] : point.factors) {
    rung.factors.push_back(point.selected ? f.o_x : kNaN);
    rung.factors.push_back(point.selected ? f.o_z : kNaN);
  }
  if (!point.selected) rung.factors.assign(2 * kAllModels.size(), kNaN);
  return rung;
}

ConvergenceRung flux_rung(const FluxQubitParams& params, int cutoff, const BasisOverrides& base) {
  BasisOverrides o = base;
  o.n_p_cutoff = cutoff;
  o.n_m_cutoff = cutoff;
  const ChargeLattice lattice = charge_lattice_for(o);
  const FluxPoint point = evaluate_flux_point(params, lattice, kAllModels);
  ConvergenceRung rung;
  rung.resolution = cutoff;
  rung.basis_size = lattice.dim();
  for (std::size_t i = 0; i < 3; ++i) rung.energies[i] = point.solution.energies.at(i);
  for (const auto& [kind, f] : point.factors) {
    rung.factors.push_back(f.o_x);
    rung.factors.push_back(f.o_z);
  }
  return rung;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::CriticalCurrent: return "critical_current";
    case ModelKind::Dipole: return "dipole";
    case ModelKind::FluxFluctuator: return "flux_fluctuator";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  for (const auto m : kAllModels) {
    if (to_string(m) == name) return m;
  }
  throw InvalidParameter("unknown coupling model '" + std::string(name) +
                         "' (expected critical_current, dipole or flux_fluctuator)");
}

void BiasRange::validate() const {
  if (n_points < 2) throw InvalidParameter("bias range needs n_points >= 2");
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
    throw InvalidParameter("bias range needs start < stop");
  }
}

std::vector<double> BiasRange::values() const {
  validate();
  std::vector<double> v(n_points);
  const double step = (stop - start) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) v[i] = start + step * static_cast<double>(i);
  v.back() = stop;
  return v;
}

PhaseGrid phase_grid_for(double bias, const BasisOverrides& overrides) {
  return default_phase_grid(bias, overrides.phase_points.value_or(1024),
                            overrides.differentiation.value_or(Differentiation::Fourier));
}

ChargeLattice charge_lattice_for(const BasisOverrides& overrides) {
  ChargeLattice lattice;
  lattice.n_p_cutoff = overrides.n_p_cutoff.value_or(lattice.n_p_cutoff);
  lattice.n_m_cutoff = overrides.n_m_cutoff.value_or(lattice.n_m_cutoff);
  lattice.sector = overrides.sector.value_or(lattice.sector);
  lattice.validate();
  return lattice;
}

std::vector<std::string> SweepConfig::validate() const {
  bias.validate();
  if (models.empty()) throw InvalidParameter("sweep needs at least one coupling model");
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = i + 1; j < models.size(); ++j) {
      if (models[i] == models[j]) throw InvalidParameter("coupling model listed twice");
    }
  }
  std::visit([](const auto& c) { c.validate(); }, circuit);
  const bool phase = std::holds_alternative<PhaseQubitParams>(circuit);
  if (phase) {
    phase_grid_for(0.5, basis).validate();
  } else {
    charge_lattice_for(basis);
  }
  const double lo = phase ? 0.4 : 0.45;
  const double hi = phase ? 0.7 : 0.55;
  std::vector<std::string> warnings;
  if (bias.start < lo || bias.stop > hi) {
    std::ostringstream msg;
    msg << "bias range [" << bias.start << ", " << bias.stop << "] leaves the validity window ["
        << lo << ", " << hi << "]";
    warnings.push_back(msg.str());
  }
  return warnings;
}

std::size_t resolve_threads(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) {
    n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COUPLINGLAB_THREADS")) {
      char* end = nullptr;
      const long cap = std::strtol(env, &end, 10);
      if (end != env && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
    }
  }
  return std::max<std::size_t>(1, n);
}

OperatorKind phase_operator_for(ModelKind kind) {
  switch (kind) {
    case ModelKind::CriticalCurrent: return OperatorKind::CosPhase;
    case ModelKind::Dipole: return OperatorKind::Charge;
    case ModelKind::FluxFluctuator: return OperatorKind::Phase;
  }
  throw InvalidParameter("unknown coupling model");
}

OperatorKind flux_operator_for(ModelKind kind) {
  switch (kind) {
    case ModelKind::CriticalCurrent: return OperatorKind::CosJ3;
    case ModelKind::Dipole: return OperatorKind::ChargeM;
    case ModelKind::FluxFluctuator: return OperatorKind::SinJ3;
  }
  throw InvalidParameter("unknown coupling model");
}

PhasePoint evaluate_phase_point(const PhaseQubitParams& params, const PhaseGrid& grid,
                                const std::vector<ModelKind>& models) {
  PhasePoint p;
  p.bias = params.bias;
  const PhaseQubitEnergies energies = derive_energies(params);
  const HamiltonianMatrix h = build_phase_qubit_hamiltonian(energies, grid);
  WellRegion well{};
  bool have_well = true;
  try {
    well = find_shallow_well(energies, grid);
  } catch (const NoMetastableQubit& e) {
    have_well = false;
    p.failure = e.what();
  }
  if (have_well) {
    p.solution = eigensolve_below(h, well.barrier_top + 0.05 * (well.barrier_top - well.potential_min));
  } else {
    p.solution = eigensolve(h, 3);
  }
  if (p.solution.size() < 3) p.solution = eigensolve(h, 3);
  if (have_well) {
    try {
      p.solution = select_metastable_qubit(p.solution, energies);
      p.selected = true;
    } catch (const NoMetastableQubit& e) {
      p.failure = e.what();
    }
  }
  if (!p.selected) return p;
  p.omega_q = p.solution.omega_q();
  p.masses[0] = localization_mass(p.solution, p.solution.qubit_indices.first, well);
  p.masses[1] = localization_mass(p.solution, p.solution.qubit_indices.second, well);
  for (const auto m : models) {
    p.factors.emplace_back(m, coupling_factors(p.solution, phase_operator_for(m)));
  }
  return p;
}

FluxPoint evaluate_flux_point(const FluxQubitParams& params, const ChargeLattice& lattice,
                              const std::vector<ModelKind>& models) {
  FluxPoint p;
  p.frustration = params.frustration;
  const HamiltonianMatrix h = build_flux_qubit_hamiltonian(params, lattice);
  p.solution = eigensolve(h, 3);
  p.omega_q = p.solution.omega_q();
  p.charge_m_01 = charge_m_element(p.solution);
  for (const auto m : models) {
    p.factors.emplace_back(m, coupling_factors(p.solution, flux_operator_for(m), params.frustration));
  }
  return p;
}

SweepTable sweep_phase_qubit(const SweepConfig& config) {
  if (!std::holds_alternative<PhaseQubitParams>(config.circuit)) {
    throw InvalidParameter("sweep_phase_qubit needs a phase-qubit circuit");
  }
  config.validate();
  const auto& base = std::get<PhaseQubitParams>(config.circuit);
  const std::vector<double> biases = config.bias.values();
  std::vector<PhasePoint> points(biases.size());
  parallel_for(biases.size(), resolve_threads(config.threads), [&](std::size_t i) {
    PhaseQubitParams params = base;
    params.bias = biases[i];
    points[i] = evaluate_phase_point(params, phase_grid_for(biases[i], config.basis), config.models);
  });

  SweepTable table;
  table.header = {"bias_phi0", "selected", "omega_q_GHz", "mass_0", "mass_1"};
  append_factor_columns(table.header, config.models);
  std::size_t n_ok = 0;
  for (const auto& p : points) {
    std::vector<double> row{p.bias, p.selected ? 1.0 : 0.0};
    if (p.selected) {
      ++n_ok;
      row.insert(row.end(), {p.omega_q, p.masses[0], p.masses[1]});
      for (const auto& [kind, f] : p.factors) row.insert(row.end(), {f.o_x, f.o_z});
    } else {
      row.resize(table.header.size(), kNaN);
    }
    table.rows.push_back(std::move(row));
  }
  if (n_ok == 0) throw NoMetastableQubit("metastable selection failed at every bias point");

  const PhaseGrid grid = phase_grid_for(biases.front(), config.basis);
  table.metadata = {
      {"couplinglab_version", kVersion},
      {"circuit", "phase_qubit"},
      {"capacitance_fF", format_number(base.capacitance * 1e15)},
      {"inductance_pH", format_number(base.inductance * 1e12)},
      {"critical_current_nA", format_number(base.critical_current * 1e9)},
      {"basis", "phase_grid n_points=" + std::to_string(grid.n_points) + " width=8pi"},
      {"models", model_list(config.models)},
      {"failed_points", std::to_string(points.size() - n_ok)},
      {"timestamp", utc_timestamp()},
  };
  table.validate();
  return table;
}

SweepTable sweep_flux_qubit(const SweepConfig& config) {
  if (!std::holds_alternative<FluxQubitParams>(config.circuit)) {
    throw InvalidParameter("sweep_flux_qubit needs a flux-qubit circuit");
  }
  config.validate();
  const auto& base = std::get<FluxQubitParams>(config.circuit);
  const ChargeLattice lattice = charge_lattice_for(config.basis);
  const std::vector<double> biases = config.bias.values();
  std::vector<FluxPoint> points(biases.size());
  parallel_for(biases.size(), resolve_threads(config.threads), [&](std::size_t i) {
    FluxQubitParams params = base;
    params.frustration = biases[i];
    points[i] = evaluate_flux_point(params, lattice, config.models);
  });

  SweepTable table;
  table.header = {"frustration_phi0", "E0_EJ", "E1_EJ", "E2_EJ", "omega_q_EJ", "omega_q_GHz"};
  append_factor_columns(table.header, config.models);
  table.header.push_back("nm_01");
  for (const auto& p : points) {
    const auto& e = p.solution.energies;
    std::vector<double> row{p.frustration, e[0], e[1], e[2], p.omega_q, p.omega_q * base.ej_ghz};
    for (const auto& [kind, f] : p.factors) row.insert(row.end(), {f.o_x, f.o_z});
    row.push_back(p.charge_m_01);
    table.rows.push_back(std::move(row));
  }
  table.metadata = {
      {"couplinglab_version", kVersion},
      {"circuit", "flux_qubit"},
      {"ej_over_ec", format_number(base.ej_over_ec)},
      {"alpha", format_number(base.alpha)},
      {"ej_GHz", format_number(base.ej_ghz)},
      {"basis", describe(lattice)},
      {"models", model_list(config.models)},
      {"timestamp", utc_timestamp()},
  };
  table.validate();
  return table;
}

ConvergenceReport convergence_study(const CircuitSpec& circuit, const std::vector<int>& ladder,
                                    const BasisOverrides& base) {
  if (ladder.size() < 3) throw InvalidParameter("convergence ladder needs at least 3 rungs");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] <= ladder[i - 1]) throw InvalidParameter("convergence ladder must increase");
  }
  std::visit([](const auto& c) { c.validate(); }, circuit);

  ConvergenceReport report;
  for (const int r : ladder) {
    ConvergenceRung rung = std::holds_alternative<PhaseQubitParams>(circuit)
                               ? phase_rung(std::get<PhaseQubitParams>(circuit), r, base)
                               : flux_rung(std::get<FluxQubitParams>(circuit), r, base);
    if (!report.rungs.empty()) {
      const auto& prev = report.rungs.back();
      rung.energy_drift = max_relative_change(rung.energies, prev.energies);
      rung.factor_drift = max_abs_change(rung.factors, prev.factors);
    }
    report.rungs.push_back(std::move(rung));
  }

  const auto& last = report.rungs.back();
  report.converged = last.energy_drift < ConvergenceReport::kEnergyTolerance &&
                     last.factor_drift < ConvergenceReport::kFactorTolerance;
  if (!report.converged) {
    std::ostringstream msg;
    msg << "unconverged: final rung " << last.resolution << " has energy drift " << last.energy_drift
        << " and factor drift " << last.factor_drift;
    report.warnings.push_back(msg.str());
  }
  for (std::size_t i = 2; i < report.rungs.size(); ++i) {
    const auto& a = report.rungs[i - 1];
    const auto& b = report.rungs[i];
    if (b.energy_drift > a.energy_drift && b.energy_drift >= ConvergenceReport::kEnergyTolerance) {
      report.warnings.push_back("non-monotone convergence: energy drift grows at rung " +
                                std::to_string(b.resolution));
    }
  }
  return report;
}

SweepTable convergence_table(const ConvergenceReport& report) {
  SweepTable table;
  table.header = {"resolution", "basis_size", "E0", "E1", "E2", "energy_drift", "factor_drift"};
  for (const auto& r : report.rungs) {
    table.rows.push_back({static_cast<double>(r.resolution), static_cast<double>(r.basis_size),
                          r.energies[0], r.energies[1], r.energies[2], r.energy_drift,
                          r.factor_drift});
  }
  table.metadata = {{"couplinglab_version", kVersion},
                    {"converged", report.converged ? "yes" : "no"}};
  return table;
}

}  // namespace couplinglab

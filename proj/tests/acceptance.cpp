// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "couplinglab/circuits.hpp"
#include "couplinglab/coupling.hpp"
#include "couplinglab/spectral.hpp"
#include "couplinglab/spectroscopy.hpp"
#include "couplinglab/sweeps.hpp"
#include "couplinglab/table.hpp"

using namespace couplinglab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Phase sweep over [0.55, 0.60] shared by criteria 3, 4 and 5.
const SweepTable& phase_sweep() {
  static const SweepTable table = [] {
    SweepConfig c;
    c.circuit = PhaseQubitParams{};
    c.bias = {0.55, 0.60, 51};
    return sweep_phase_qubit(c);
  }();
  return table;
}

void zeros_at_degeneracy(Outcome& o) {
  FluxQubitParams p;
  p.frustration = 0.5;
  const auto pt = evaluate_flux_point(p, ChargeLattice{16, 16},
                                      {ModelKind::CriticalCurrent, ModelKind::FluxFluctuator});
  const double oxi = pt.factors[0].second.o_x;
  const double ozp = pt.factors[1].second.o_z;
  o.detail << "o_x^i=" << fmt(oxi) << " o_z^phi=" << fmt(ozp);
  o.require(oxi < 1e-8, "o_x^i < 1e-8");
  o.require(ozp < 1e-8, "o_z^phi < 1e-8");
}

void flux_trends(Outcome& o) {
  SweepConfig c;
  c.circuit = FluxQubitParams{};
  c.bias = {0.50, 0.51, 51};
  c.models = {ModelKind::CriticalCurrent, ModelKind::FluxFluctuator};
  c.threads = 1;
  const auto t = sweep_flux_qubit(c);
  const auto oxi = t.column_values("ox_critical_current");
  const auto ozi = t.column_values("oz_critical_current");
  const auto oxp = t.column_values("ox_flux_fluctuator");
  const auto ozp = t.column_values("oz_flux_fluctuator");
  bool up_oxi = true, down_ozi = true, down_oxp = true, up_ozp = true;
  for (std::size_t i = 1; i < oxi.size(); ++i) {
    up_oxi = up_oxi && oxi[i] > oxi[i - 1];
    down_ozi = down_ozi && ozi[i] < ozi[i - 1];
    down_oxp = down_oxp && oxp[i] < oxp[i - 1];
    up_ozp = up_ozp && ozp[i] > ozp[i - 1];
  }
  const double r_phi = ozp.back() / oxp.back();
  const double r_i = oxi.back() / ozi.back();
  o.detail << "at f=0.51 o_z^phi/o_x^phi=" << fmt(r_phi) << " o_x^i/o_z^i=" << fmt(r_i);
  o.require(up_oxi, "o_x^i increasing");
  o.require(down_ozi, "o_z^i decreasing");
  o.require(down_oxp, "o_x^phi decreasing");
  o.require(up_ozp, "o_z^phi increasing");
  o.require(r_phi > 1.5, "o_z^phi/o_x^phi > 1.5");
  o.require(r_i > 3.0, "o_x^i/o_z^i > 3");
}

void phase_ratio_bounds(Outcome& o) {
  const auto& t = phase_sweep();
  const auto bias = t.column_values("bias_phi0");
  const auto sel = t.column_values("selected");
  const auto oxi = t.column_values("ox_critical_current");
  const auto ozi = t.column_values("oz_critical_current");
  const auto oxp = t.column_values("ox_flux_fluctuator");
  const auto ozp = t.column_values("oz_flux_fluctuator");

  double worst_low = 0.0, worst_all = 0.0;
  std::vector<double> over_tenth, over_sixth, unselected;
  for (std::size_t i = 0; i < bias.size(); ++i) {
    if (sel[i] != 1.0) {
      unselected.push_back(bias[i]);
      continue;
    }
    const double r = std::max(ozi[i] / oxi[i], ozp[i] / oxp[i]);
    worst_all = std::max(worst_all, r);
    if (!(r < 1.0 / 6.0)) over_sixth.push_back(bias[i]);
    if (bias[i] < 0.57 - 1e-12) {
      worst_low = std::max(worst_low, r);
      if (!(r < 0.1)) over_tenth.push_back(bias[i]);
    }
  }
  auto list = [](const std::vector<double>& v) {
    if (v.empty()) return std::string("none");
    return fmt(v.front()) + ".." + fmt(v.back()) + " (" + std::to_string(v.size()) + " pts)";
  };
  o.detail << "max o_z/o_x: " << fmt(worst_low) << " below 0.57, " << fmt(worst_all)
           << " overall; selection failed at " << list(unselected)
           << "; >=0.1 below 0.57 at " << list(over_tenth) << "; >=1/6 at " << list(over_sixth);
  o.require(unselected.size() < bias.size(), "some point selected");
  o.require(over_tenth.empty(), "o_z/o_x < 0.1 for phi_e < 0.57");
  o.require(over_sixth.empty(), "o_z/o_x < 1/6");
}

void phase_equivalence(Outcome& o) {
  const auto& t = phase_sweep();
  const auto sel = t.column_values("selected");
  const auto oxi = t.column_values("ox_critical_current");
  const auto oxp = t.column_values("ox_flux_fluctuator");
  double worst = 0.0;
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (sel[i] == 1.0) worst = std::max(worst, std::abs(oxi[i] - oxp[i]) / oxp[i]);
  }
  o.detail << "max |o_x^i - o_x^phi|/o_x^phi=" << fmt(worst);
  o.require(worst < 0.2, "relative difference < 0.2");
}

void dipole_purity(Outcome& o) {
  const auto& t = phase_sweep();
  const auto sel = t.column_values("selected");
  const auto ozq = t.column_values("oz_dipole");
  double worst = 0.0;
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (sel[i] == 1.0) worst = std::max(worst, ozq[i]);
  }
  double worst_gz = 0.0;
  FluxQubitParams p;
  for (double f : {0.5, 0.503, 0.507, 0.51}) {
    p.frustration = f;
    const auto sol = eigensolve(build_flux_qubit_hamiltonian(p, ChargeLattice{}), 3);
    for (double eps : {-3.0, 0.0, 0.5, 4.0}) {
      const auto g = dipole_coupling_flux(sol, p, model::Dipole{0.3e-9, 2e-9, 0.4}, TLSParams{eps, 5.0});
      worst_gz = std::max(worst_gz, std::abs(g.g_z));
    }
  }
  o.detail << "phase max o_z^q=" << fmt(worst) << " flux max |g_z|=" << fmt(worst_gz);
  o.require(worst < 1e-10, "phase o_z^q < 1e-10");
  o.require(worst_gz == 0.0, "flux dipole g_z == 0");
}

void asymmetry_identity(Outcome& o) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> omega(1.0, 10.0), gx(0.0, 0.1), gz(-0.05, 0.05);
  double worst = 0.0, worst_zero = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double w = omega(rng);
    const PauliCoupling g{gx(rng), gz(rng)};
    const auto a = two_photon_asymmetry(composite_spectrum(w, w, g));
    worst = std::max(worst, std::abs(a.asymmetry - 4 * g.g_z));
    const auto z = two_photon_asymmetry(composite_spectrum(w, w, {g.g_x, 0.0}));
    worst_zero = std::max(worst_zero, std::abs(z.asymmetry));
  }
  o.detail << "max |A - 4 g_z|=" << fmt(worst) << " max |A(g_z=0)|=" << fmt(worst_zero);
  o.require(worst < 1e-12, "A = 4 g_z to 1e-12");
  o.require(worst_zero < 1e-12, "A = 0 when g_z = 0");
}

void analytic_oracles(Outcome& o) {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> omega(1.0, 10.0), gx(0.0, 0.1), gz(-0.05, 0.05);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double wq = omega(rng), wt = omega(rng);
    const PauliCoupling g{gx(rng), gz(rng)};
    const auto s = composite_spectrum(wq, wt, g);
    const auto c = composite_levels_closed_form(wq, wt, g);
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(s.energies[k] - c[k]));
  }
  PhaseQubitEnergies e = derive_energies(PhaseQubitParams{});
  e.josephson = 0.0;
  const double w = std::sqrt(8 * e.charging * e.inductive);
  const auto sol = eigensolve(build_phase_qubit_hamiltonian(e, default_phase_grid(e.bias)), 6);
  double worst_rel = 0.0;
  for (std::size_t n = 0; n < sol.size(); ++n) {
    const double exact = w * (static_cast<double>(n) + 0.5);
    worst_rel = std::max(worst_rel, std::abs(sol.energies[n] - exact) / exact);
  }
  o.detail << "4x4 max error=" << fmt(worst) << " harmonic ladder max rel error=" << fmt(worst_rel);
  o.require(worst < 1e-12, "closed form to 1e-12");
  o.require(worst_rel < 1e-6, "harmonic ladder to 1e-6");
}

void flux_anharmonicity(Outcome& o) {
  FluxQubitParams p;
  double worst = 0.0;  // largest (E1-E0)/(E2-E1)
  double at = 0.0;
  for (int i = 1; i < 40; ++i) {
    p.frustration = 0.49 + 0.02 * i / 40.0;
    const auto sol = eigensolve(build_flux_qubit_hamiltonian(p, ChargeLattice{}), 3);
    const double r = (sol.energies[1] - sol.energies[0]) / (sol.energies[2] - sol.energies[1]);
    if (r > worst) {
      worst = r;
      at = p.frustration;
    }
  }
  o.detail << "max (E1-E0)/(E2-E1)=" << fmt(worst) << " at f=" << fmt(at) << " over 39 points";
  o.require(worst < 1.0, "E1-E0 < E2-E1");
}

void convergence(Outcome& o) {
  const auto flux = convergence_study(FluxQubitParams{}, {8, 16, 32});
  const auto phase = convergence_study(PhaseQubitParams{}, {512, 1024, 2048});
  const auto& fr = flux.rungs.back();
  const auto& pr = phase.rungs.back();
  o.detail << "flux 16->32: dE=" << fmt(fr.energy_drift) << " dO=" << fmt(fr.factor_drift)
           << "; phase 1024->2048: dE=" << fmt(pr.energy_drift) << " dO=" << fmt(pr.factor_drift);
  o.require(fr.energy_drift < 1e-8, "flux energies");
  o.require(fr.factor_drift < 1e-6, "flux factors");
  o.require(pr.energy_drift < 1e-8, "phase energies");
  o.require(pr.factor_drift < 1e-6, "phase factors");
}

void ehrenfest(Outcome& o) {
  FluxQubitParams p;
  p.frustration = 0.505;
  const auto sol = eigensolve(build_flux_qubit_hamiltonian(p, ChargeLattice{}), 3);
  const double lhs = sol.omega_q() * phase_m_element(sol);
  const double rhs = 2 * p.em_ej() * charge_m_element(sol);
  const double rel = std::abs(lhs - rhs) / rhs;
  o.detail << "relative mismatch=" << fmt(rel);
  o.require(rel < 0.01, "within 1%");
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "flux-qubit degeneracy-point zeros", 5.0, zeros_at_degeneracy},
      {2, "flux-qubit factor trends", 120.0, flux_trends},
      {3, "phase-qubit ratio bounds", 120.0, phase_ratio_bounds},
      {4, "phase-qubit model equivalence", 120.0, phase_equivalence},
      {5, "dipole purity", 120.0, dipole_purity},
      {6, "two-photon asymmetry identity", 1.0, asymmetry_identity},
      {7, "analytic oracles", 60.0, analytic_oracles},
      {8, "flux-qubit anharmonicity", 60.0, flux_anharmonicity},
      {9, "basis convergence", 120.0, convergence},
      {10, "Ehrenfest cross-check", 10.0, ehrenfest},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit_s) {
      o.pass = false;
      o.detail << " [over time limit " << fmt(c.time_limit_s) << " s]";
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << ": "
              << o.detail.str() << " (" << fmt(secs) << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}

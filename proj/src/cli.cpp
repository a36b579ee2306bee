#include "couplinglab/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "couplinglab/config.hpp"
#include "couplinglab/errors.hpp"
#include "couplinglab/spectroscopy.hpp"
#include "couplinglab/svg_plot.hpp"
#include "couplinglab/sweeps.hpp"
#include "couplinglab/version.hpp"

namespace couplinglab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  bool plot = false;
  bool quiet = false;
};

struct Context {
  const Options& opts;
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;

  void warn(const std::string& msg) const {
    if (!opts.quiet) err << "warning: " << msg << '\n';
  }
};

void emit_table(const Context& ctx, const SweepTable& table) {
  if (ctx.opts.out.empty()) {
    write_csv(table, ctx.out);
    return;
  }
  std::ofstream file(ctx.opts.out);
  if (!file) throw InvalidParameter("cannot write output file '" + ctx.opts.out + "'");
  write_csv(table, file);
  if (!file) throw InvalidParameter("failed writing output file '" + ctx.opts.out + "'");
  if (!ctx.opts.quiet) ctx.err << "wrote " << ctx.opts.out << '\n';
}

std::filesystem::path plot_path(const Context& ctx, const std::string& suffix) {
  std::filesystem::path p(ctx.opts.out);
  p.replace_extension();
  p += suffix + ".svg";
  return p;
}

// Plots are optional output: any failure becomes a warning.
void emit_plots(const Context& ctx, const std::vector<std::pair<std::string, PlotSpec>>& plots) {
  if (!ctx.opts.plot) return;
  if (ctx.opts.out.empty()) {
    ctx.warn("--plot needs --out to name the plot files; skipping plots");
    return;
  }
  for (const auto& [suffix, spec] : plots) {
    const auto path = plot_path(ctx, suffix);
    try {
      write_svg(spec, path);
      if (!ctx.opts.quiet) ctx.err << "wrote " << path.string() << '\n';
    } catch (const std::exception& e) {
      ctx.warn(std::string("plot skipped, CSV only: ") + e.what());
    }
  }
}

const char* model_color(ModelKind m) {
  switch (m) {
    case ModelKind::CriticalCurrent: return "#1f77b4";
    case ModelKind::Dipole: return "#2ca02c";
    case ModelKind::FluxFluctuator: return "#d62728";
  }
  return "black";
}

std::string model_symbol(ModelKind m) {
  switch (m) {
    case ModelKind::CriticalCurrent: return "i";
    case ModelKind::Dipole: return "q";
    case ModelKind::FluxFluctuator: return "phi";
  }
  return "?";
}

Curve factor_curve(const SweepTable& t, const std::string& bias_col, ModelKind m, bool longitudinal) {
  Curve c;
  const std::string axis = longitudinal ? "z" : "x";
  c.label = "o_" + axis + "^" + model_symbol(m);
  c.x = t.column_values(bias_col);
  c.y = t.column_values((longitudinal ? "oz_" : "ox_") + std::string(to_string(m)));
  c.dashed = longitudinal;
  c.color = model_color(m);
  return c;
}

void require_circuit(const RunConfig& cfg, bool phase, const char* command) {
  if (!cfg.circuit || cfg.is_phase() != phase) {
    throw InvalidParameter(std::string(command) + " needs a '" + (phase ? "phase" : "flux") +
                           "' circuit in the config");
  }
}

void print_warnings(const Context& ctx, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) ctx.warn(w);
}

// ---------------------------------------------------------------------------

int run_sweep_phase(const Context& ctx) {
  require_circuit(ctx.cfg, true, "sweep-phase");
  const SweepConfig sc = ctx.cfg.sweep_config();
  print_warnings(ctx, sc.validate());
  const SweepTable table = sweep_phase_qubit(sc);
  const std::string failed = table.meta("failed_points");
  if (!failed.empty() && failed != "0") {
    ctx.warn("metastable selection failed at " + failed + " bias point(s); see the 'selected' column");
  }
  emit_table(ctx, table);
  PlotSpec plot;
  plot.title = "Phase qubit coupling factors";
  plot.x_label = "phi_e (phi0)";
  plot.y_label = "coupling factor";
  for (const auto m : sc.models) {
    if (m == ModelKind::Dipole) continue;  // o^q has no longitudinal part and a different scale
    plot.curves.push_back(factor_curve(table, "bias_phi0", m, false));
    plot.curves.push_back(factor_curve(table, "bias_phi0", m, true));
  }
  if (plot.curves.empty()) {
    for (const auto m : sc.models) plot.curves.push_back(factor_curve(table, "bias_phi0", m, false));
  }
  emit_plots(ctx, {{"", plot}});
  return kExitOk;
}

int run_sweep_flux(const Context& ctx) {
  require_circuit(ctx.cfg, false, "sweep-flux");
  const SweepConfig sc = ctx.cfg.sweep_config();
  print_warnings(ctx, sc.validate());
  const SweepTable table = sweep_flux_qubit(sc);
  emit_table(ctx, table);
  std::vector<std::pair<std::string, PlotSpec>> plots;
  for (const auto m : sc.models) {
    if (m == ModelKind::Dipole) continue;
    PlotSpec plot;
    plot.title = m == ModelKind::CriticalCurrent ? "Critical-current fluctuator" : "Flux fluctuator";
    plot.x_label = "f (phi0)";
    plot.y_label = "coupling factor";
    plot.curves = {factor_curve(table, "frustration_phi0", m, false),
                   factor_curve(table, "frustration_phi0", m, true)};
    plots.emplace_back("_" + std::string(to_string(m)), plot);
  }
  emit_plots(ctx, plots);
  return kExitOk;
}

int run_factors(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (!cfg.circuit) throw InvalidParameter("factors needs a 'circuit' section in the config");
  SweepTable table;
  table.header = {"model_index", "o_x", "o_z", "prefactor_GHz", "g_x_GHz", "g_z_GHz"};
  std::string model_names;
  double omega_q_ghz = 0.0;
  std::vector<std::pair<ModelKind, CouplingFactors>> factors;
  EigenSolution solution;
  if (cfg.is_phase()) {
    const auto& p = std::get<PhaseQubitParams>(*cfg.circuit);
    const PhasePoint point = evaluate_phase_point(p, phase_grid_for(p.bias, cfg.basis), cfg.models);
    if (!point.selected) throw NoMetastableQubit(point.failure);
    omega_q_ghz = point.omega_q;
    factors = point.factors;
  } else {
    const auto& p = std::get<FluxQubitParams>(*cfg.circuit);
    const FluxPoint point = evaluate_flux_point(p, charge_lattice_for(cfg.basis), cfg.models);
    omega_q_ghz = point.omega_q * p.ej_ghz;
    factors = point.factors;
    solution = point.solution;
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& [kind, f] = factors[i];
    std::vector<double> row{static_cast<double>(i), f.o_x, f.o_z, kNaN, kNaN, kNaN};
    if (!model_names.empty()) model_names += ';';
    model_names += to_string(kind);
    bool have_model = kind == ModelKind::CriticalCurrent ? cfg.critical_current.has_value()
                      : kind == ModelKind::Dipole        ? cfg.dipole.has_value()
                                                         : cfg.flux_fluctuator.has_value();
    if (cfg.tls && have_model) {
      const CouplingModel m = cfg.coupling_model(kind);
      PauliCoupling g;
      if (cfg.is_flux() && kind == ModelKind::Dipole) {
        g = dipole_coupling_flux(solution, std::get<FluxQubitParams>(*cfg.circuit), *cfg.dipole, *cfg.tls);
      } else {
        const double v = cfg.is_phase() ? model_prefactor(m, std::get<PhaseQubitParams>(*cfg.circuit))
                                        : model_prefactor(m, std::get<FluxQubitParams>(*cfg.circuit));
        row[3] = v;
        g = pauli_coupling(m, f, *cfg.tls, v);
      }
      row[4] = g.g_x;
      row[5] = g.g_z;
    }
    table.rows.push_back(std::move(row));
  }
  table.metadata = {{"couplinglab_version", kVersion},
                    {"circuit", cfg.is_phase() ? "phase_qubit" : "flux_qubit"},
                    {"models", model_names},
                    {"omega_q_GHz", format_number(omega_q_ghz)}};
  emit_table(ctx, table);
  return kExitOk;
}

int run_spectrum(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (!cfg.spectrum) throw InvalidParameter("spectrum needs a 'spectrum' section in the config");
  const SpectrumInput& in = *cfg.spectrum;
  const std::optional<double> omega_t = in.omega_t ? in.omega_t
                                        : cfg.tls  ? std::optional<double>(cfg.tls->omega())
                                                   : std::nullopt;
  if (!in.omega_q || !omega_t) {
    throw InvalidParameter("spectrum needs omega_q_GHz and omega_t_GHz (or a 'tls' section)");
  }
  const PauliCoupling g{in.g_x, in.g_z};
  const CompositeSpectrum s = composite_spectrum(*in.omega_q, *omega_t, g);
  const TransitionSet t = two_photon_asymmetry(s);
  auto line = [&](const char* name, double v) {
    ctx.out << std::left << std::setw(10) << name << format_number(v) << '\n';
  };
  line("E_1", s.energies[0]);
  line("E_2", s.energies[1]);
  line("E_3", s.energies[2]);
  line("E_4", s.energies[3]);
  line("w_12", t.omega_12);
  line("w_13", t.omega_13);
  line("w_14", t.omega_14);
  line("A", t.asymmetry);
  line("A/2", t.two_photon_offset());
  if (!ctx.opts.out.empty()) {
    SweepTable table;
    table.header = {"omega_q_GHz", "omega_t_GHz", "g_x_GHz", "g_z_GHz", "E_1", "E_2", "E_3", "E_4",
                    "omega_12", "omega_13", "omega_14", "A", "A_half"};
    table.rows.push_back({*in.omega_q, *omega_t, g.g_x, g.g_z, s.energies[0], s.energies[1],
                          s.energies[2], s.energies[3], t.omega_12, t.omega_13, t.omega_14,
                          t.asymmetry, t.two_photon_offset()});
    table.metadata = {{"couplinglab_version", kVersion}};
    emit_table(ctx, table);
  }
  return kExitOk;
}

int run_anticross(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (!cfg.circuit) throw InvalidParameter("anticross needs a 'circuit' section in the config");
  if (!cfg.tls) throw InvalidParameter("anticross needs a 'tls' section in the config");
  const ModelKind kind = cfg.anticross.model;
  const CouplingModel model = cfg.coupling_model(kind);
  const double omega_t = cfg.anticross.omega_t.value_or(cfg.tls->omega());
  SweepConfig sc = cfg.sweep_config();
  sc.models = {kind};
  print_warnings(ctx, sc.validate());

  std::vector<ScanPoint> scan;
  std::size_t skipped = 0;
  for (const double bias : sc.bias.values()) {
    ScanPoint sp;
    sp.bias = bias;
    if (cfg.is_phase()) {
      PhaseQubitParams p = std::get<PhaseQubitParams>(*cfg.circuit);
      p.bias = bias;
      const PhasePoint point = evaluate_phase_point(p, phase_grid_for(bias, cfg.basis), sc.models);
      if (!point.selected) {
        ++skipped;
        continue;
      }
      sp.omega_q = point.omega_q;
      sp.coupling = pauli_coupling(model, point.factors.front().second, *cfg.tls, model_prefactor(model, p));
    } else {
      FluxQubitParams p = std::get<FluxQubitParams>(*cfg.circuit);
      p.frustration = bias;
      const FluxPoint point = evaluate_flux_point(p, charge_lattice_for(cfg.basis), sc.models);
      sp.omega_q = point.omega_q * p.ej_ghz;
      sp.coupling = kind == ModelKind::Dipole
                        ? dipole_coupling_flux(point.solution, p, *cfg.dipole, *cfg.tls)
                        : pauli_coupling(model, point.factors.front().second, *cfg.tls,
                                         model_prefactor(model, p));
    }
    scan.push_back(sp);
  }
  if (scan.empty()) throw NoMetastableQubit("metastable selection failed at every bias point");
  if (skipped) ctx.warn(std::to_string(skipped) + " bias point(s) skipped: no metastable qubit");
  const AnticrossingScan result = anticrossing_scan(scan, omega_t);
  if (!result.crosses_resonance) ctx.warn("qubit frequency never crosses the TLS frequency in this sweep");

  SweepTable table;
  table.header = {"bias_phi0", "omega_q_GHz", "g_x_GHz", "g_z_GHz", "omega_12", "omega_13", "omega_14", "A"};
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const auto& r = result.rows[i];
    table.rows.push_back({r.bias, r.omega_q, scan[i].coupling.g_x, scan[i].coupling.g_z,
                          r.transitions.omega_12, r.transitions.omega_13, r.transitions.omega_14,
                          r.transitions.asymmetry});
  }
  table.metadata = {{"couplinglab_version", kVersion},
                    {"model", std::string(to_string(kind))},
                    {"omega_t_GHz", format_number(omega_t)},
                    {"crosses_resonance", result.crosses_resonance ? "yes" : "no"},
                    {"min_gap_GHz", format_number(result.min_gap)},
                    {"min_gap_bias_phi0", format_number(result.min_gap_bias)}};
  emit_table(ctx, table);
  return kExitOk;
}

int run_converge(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (!cfg.circuit) throw InvalidParameter("converge needs a 'circuit' section in the config");
  std::vector<int> ladder = cfg.convergence_ladder;
  if (ladder.empty()) ladder = cfg.is_phase() ? std::vector<int>{512, 1024, 2048} : std::vector<int>{8, 12, 16, 24};
  const ConvergenceReport report = convergence_study(*cfg.circuit, ladder, cfg.basis);
  print_warnings(ctx, report.warnings);
  emit_table(ctx, convergence_table(report));
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qubit-TLS coupling calculator", "couplinglab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  Options opts;
  using Runner = std::function<int(const Context&)>;
  std::vector<std::pair<CLI::App*, Runner>> commands;
  auto add = [&](const char* name, const char* help, Runner run) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "JSON configuration file")->required();
    sub->add_option("--out", opts.out, "output CSV path (default: stdout)");
    sub->add_flag("--plot", opts.plot, "also write SVG plots next to --out");
    sub->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"csv"}));
    sub->add_flag("--quiet", opts.quiet, "suppress warnings and progress messages");
    commands.emplace_back(sub, std::move(run));
  };
  add("factors", "coupling factors and strengths at the configured bias", run_factors);
  add("sweep-phase", "phase-qubit factors over a bias sweep", run_sweep_phase);
  add("sweep-flux", "flux-qubit levels and factors over a frustration sweep", run_sweep_flux);
  add("spectrum", "composite qubit-TLS levels and two-photon asymmetry", run_spectrum);
  add("anticross", "transition frequencies across the qubit-TLS resonance", run_anticross);
  add("converge", "basis convergence study", run_converge);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  try {
    const RunConfig cfg = load_config(opts.config);
    const Context ctx{opts, cfg, out, err};
    for (const auto& [sub, run] : commands) {
      if (sub->parsed()) return run(ctx);
    }
    err << app.help();
    return kExitInvalid;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const IncompatibleBasis& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace couplinglab

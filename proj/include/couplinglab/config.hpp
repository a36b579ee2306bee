// JSON run configuration.
//
// Every physical quantity carries its unit in the key name. Example:
//
//   {
//     "circuit": {"type": "phase", "capacitance_fF": 850, "inductance_pH": 720,
//                 "critical_current_nA": 984, "bias_phi0": 0.58},
//     "basis": {"n_points": 1024, "differentiation": "fourier"},
//     "sweep": {"start_phi0": 0.55, "stop_phi0": 0.60, "n_points": 51},
//     "models": ["critical_current", "dipole", "flux_fluctuator"],
//     "tls": {"epsilon_GHz": 0.0, "delta_GHz": 7.0},
//     "coupling": {"critical_current": {"delta_i0_nA": 1.0},
//                  "dipole": {"d_nm": 0.3, "x_nm": 2.0, "eta_rad": 0.0},
//                  "flux_fluctuator": {"delta_flux_phi0": 1e-6}},
//     "threads": 0
//   }
//
// Unknown keys are rejected. See README.md for the full schema.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "couplinglab/coupling.hpp"
#include "couplinglab/sweeps.hpp"

namespace couplinglab {

struct SpectrumInput {
  std::optional<double> omega_q;  // GHz
  std::optional<double> omega_t;  // GHz
  double g_x = 0.0;               // GHz
  double g_z = 0.0;               // GHz
};

struct AnticrossInput {
  ModelKind model = ModelKind::CriticalCurrent;
  std::optional<double> omega_t;  // GHz, defaults to the TLS frequency
};

struct RunConfig {
  std::optional<CircuitSpec> circuit;
  BasisOverrides basis;
  std::optional<BiasRange> sweep;
  std::vector<ModelKind> models{ModelKind::CriticalCurrent, ModelKind::Dipole,
                                ModelKind::FluxFluctuator};
  std::optional<TLSParams> tls;
  std::optional<model::CriticalCurrent> critical_current;
  std::optional<model::Dipole> dipole;
  std::optional<model::FluxFluctuator> flux_fluctuator;
  std::optional<SpectrumInput> spectrum;
  AnticrossInput anticross;
  std::vector<int> convergence_ladder;
  std::size_t threads = 0;

  bool is_phase() const;
  bool is_flux() const;
  /// Coupling model of the given kind from the "coupling" section; throws
  /// InvalidParameter when it is absent.
  CouplingModel coupling_model(ModelKind kind) const;
  /// Sweep configuration with the circuit default ranges filled in.
  SweepConfig sweep_config() const;
};

/// Throws InvalidParameter on malformed JSON, wrong types or unknown keys.
RunConfig parse_config(const std::string& json_text);
/// Throws InvalidParameter naming the path when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Default sweep windows: phase [0.55, 0.60], flux [0.50, 0.51], 51 points.
BiasRange default_phase_sweep();
BiasRange default_flux_sweep();

}  // namespace couplinglab

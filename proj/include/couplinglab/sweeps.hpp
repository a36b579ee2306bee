// Bias sweeps, per-point pipelines and basis convergence studies.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "couplinglab/circuits.hpp"
#include "couplinglab/coupling.hpp"
#include "couplinglab/spectral.hpp"
#include "couplinglab/table.hpp"

namespace couplinglab {

using CircuitSpec = std::variant<PhaseQubitParams, FluxQubitParams>;

enum class ModelKind { CriticalCurrent, Dipole, FluxFluctuator };

std::string_view to_string(ModelKind kind);
/// Parses "critical_current", "dipole" or "flux_fluctuator".
ModelKind parse_model_kind(std::string_view name);

struct BiasRange {
  double start = 0.0;
  double stop = 0.0;
  std::size_t n_points = 2;

  /// Throws InvalidParameter unless n_points >= 2 and start < stop.
  void validate() const;
  std::vector<double> values() const;
};

/// Optional replacements for the default discretization.
struct BasisOverrides {
  std::optional<std::size_t> phase_points;
  std::optional<Differentiation> differentiation;
  std::optional<int> n_p_cutoff;
  std::optional<int> n_m_cutoff;
  std::optional<LatticeSector> sector;
};

PhaseGrid phase_grid_for(double bias, const BasisOverrides& overrides);
ChargeLattice charge_lattice_for(const BasisOverrides& overrides);

struct SweepConfig {
  CircuitSpec circuit;
  BiasRange bias;
  std::vector<ModelKind> models{ModelKind::CriticalCurrent, ModelKind::Dipole,
                                ModelKind::FluxFluctuator};
  BasisOverrides basis;
  /// 0: use COUPLINGLAB_THREADS or the hardware concurrency.
  std::size_t threads = 0;

  /// Throws on invalid ranges or models; returns warnings for biases outside
  /// the validity window (phase [0.4, 0.7], flux [0.45, 0.55]).
  std::vector<std::string> validate() const;
};

/// Resolves the worker count for a request (0 = automatic).
std::size_t resolve_threads(std::size_t requested);

// ---------------------------------------------------------------------------
// Single bias points

struct PhasePoint {
  double bias = 0.0;
  bool selected = false;
  std::string failure;  // set when selection failed
  EigenSolution solution;
  double omega_q = 0.0;  // GHz
  std::array<double, 2> masses{};
  std::vector<std::pair<ModelKind, CouplingFactors>> factors;
};

PhasePoint evaluate_phase_point(const PhaseQubitParams& params, const PhaseGrid& grid,
                                const std::vector<ModelKind>& models);

struct FluxPoint {
  double frustration = 0.0;
  EigenSolution solution;  // lowest three levels
  double omega_q = 0.0;    // EJ units
  double charge_m_01 = 0.0;
  std::vector<std::pair<ModelKind, CouplingFactors>> factors;
};

FluxPoint evaluate_flux_point(const FluxQubitParams& params, const ChargeLattice& lattice,
                              const std::vector<ModelKind>& models);

/// Operator a model couples through on the flux qubit.
OperatorKind flux_operator_for(ModelKind kind);
OperatorKind phase_operator_for(ModelKind kind);

// ---------------------------------------------------------------------------
// Sweeps

/// Per phi_e: solve, select the metastable pair and tabulate omega_q and the
/// factors. Failed selections are kept with selected = 0 and nan columns.
/// Throws NoMetastableQubit if every point fails.
SweepTable sweep_phase_qubit(const SweepConfig& config);

/// Per f: lowest three levels, omega_q and the factors, energies in EJ.
SweepTable sweep_flux_qubit(const SweepConfig& config);

// ---------------------------------------------------------------------------
// Convergence

struct ConvergenceRung {
  int resolution = 0;  // phase grid points or charge cutoff
  std::size_t basis_size = 0;
  std::array<double, 3> energies{};
  /// Factors used for the drift measure (o_x, o_z per model); nan when the
  /// qubit could not be identified.
  std::vector<double> factors;
  double energy_drift = 0.0;  // max relative change vs previous rung
  double factor_drift = 0.0;  // max absolute change vs previous rung
};

struct ConvergenceReport {
  std::vector<ConvergenceRung> rungs;
  bool converged = false;
  std::vector<std::string> warnings;

  static constexpr double kEnergyTolerance = 1e-8;
  static constexpr double kFactorTolerance = 1e-6;
};

/// Solves the circuit on each rung of the ladder (phase grid points or
/// charge cutoffs, applied to both n_p and n_m) and reports successive drifts.
ConvergenceReport convergence_study(const CircuitSpec& circuit, const std::vector<int>& ladder,
                                    const BasisOverrides& base = {});

SweepTable convergence_table(const ConvergenceReport& report);

}  // namespace couplinglab

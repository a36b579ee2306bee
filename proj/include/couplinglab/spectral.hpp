// Lowest eigenpairs of circuit Hamiltonians and qubit-state bookkeeping.
#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "couplinglab/basis.hpp"
#include "couplinglab/circuits.hpp"
#include "couplinglab/matrix.hpp"

namespace couplinglab {

/// Lowest eigenpairs of a Hermitian matrix.
///
/// Columns of `states` are orthonormal, gauge fixed so that the first entry
/// within 1e-8 of the largest magnitude is real and positive.
struct EigenSolution {
  std::vector<double> energies;  // ascending, units of the input matrix
  Eigen::MatrixXcd states;       // dim x k
  BasisSpec basis;
  std::pair<std::size_t, std::size_t> qubit_indices{0, 1};

  std::size_t size() const { return energies.size(); }
  Eigen::VectorXcd state(std::size_t i) const { return states.col(static_cast<Eigen::Index>(i)); }
  const Eigen::VectorXcd qubit_ground() const { return state(qubit_indices.first); }
  const Eigen::VectorXcd qubit_excited() const { return state(qubit_indices.second); }
  /// E(|1>) - E(|0>) of the designated qubit pair.
  double omega_q() const;
};

struct SolverOptions {
  /// Largest dimension handled by the dense LAPACK path; larger problems go
  /// to Lanczos.
  std::size_t dense_limit = 4096;
  double tolerance = 1e-10;
  /// Residual bound ||H psi - E psi|| <= residual_tolerance * ||H||_inf.
  double residual_tolerance = 1e-8;
};

/// Lowest k eigenpairs. Throws InvalidParameter if k > dim or k == 0, and
/// NumericError when the residual check fails.
EigenSolution eigensolve(const HamiltonianMatrix& h, std::size_t k, const SolverOptions& options = {});

/// All eigenpairs with energy <= upper (at least one pair is returned).
EigenSolution eigensolve_below(const HamiltonianMatrix& h, double upper,
                               const SolverOptions& options = {});

/// Multiplies each column by a phase so its leading entry is real positive.
void fix_gauge(Eigen::MatrixXcd& states);

/// Largest ||H psi_i - E_i psi_i|| over the returned pairs.
double max_residual(const HamiltonianMatrix& h, const EigenSolution& sol);
/// max |<psi_i|psi_j> - delta_ij|.
double orthonormality_defect(const EigenSolution& sol);

// ---------------------------------------------------------------------------
// Lanczos (matrix free)

using LinearOperator = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

struct LanczosResult {
  std::vector<double> values;
  Eigen::MatrixXcd vectors;
  std::size_t iterations = 0;
};

/// Lowest k eigenpairs of a Hermitian operator by Lanczos with full
/// reorthogonalization. Exactly degenerate eigenvalues are found once.
LanczosResult lanczos_lowest(const LinearOperator& apply, std::size_t dim, std::size_t k,
                             double tolerance = 1e-10, std::size_t max_basis = 0);

// ---------------------------------------------------------------------------
// Phase-qubit metastable well

/// Phase interval around the shallow minimum of the phase-qubit potential.
struct WellRegion {
  double phi_lo = 0.0;
  double phi_hi = 0.0;
  double phi_min = 0.0;       // location of the shallow minimum
  double potential_min = 0.0;  // U at the shallow minimum, GHz
  double barrier_top = 0.0;    // lowest bounding maximum of U, GHz
};

/// Throws NoMetastableQubit if the potential has a single well and
/// AmbiguousWell if both wells are equally deep.
WellRegion find_shallow_well(const PhaseQubitEnergies& energies, const PhaseGrid& grid);

/// Probability of state i inside the region.
double localization_mass(const EigenSolution& sol, std::size_t i, const WellRegion& region);

/// Designates the two lowest states that sit below the barrier with at least
/// 50% probability inside the shallow well. Throws NoMetastableQubit when
/// fewer than two qualify.
EigenSolution select_metastable_qubit(const EigenSolution& sol, const PhaseQubitParams& params);
EigenSolution select_metastable_qubit(const EigenSolution& sol, const PhaseQubitEnergies& energies);

/// Builds, solves and selects in one step, requesting every state up to the
/// barrier top of the shallow well.
EigenSolution solve_phase_qubit(const PhaseQubitParams& params, const PhaseGrid& grid,
                                const SolverOptions& options = {});

}  // namespace couplinglab

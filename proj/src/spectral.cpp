#include "couplinglab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>
#include <type_traits>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Eigenvalues>

#include "couplinglab/errors.hpp"

namespace couplinglab {

namespace {

struct RawEigen {
  std::vector<double> values;
  Eigen::MatrixXcd vectors;
};

// Eigenpairs of a real symmetric tridiagonal matrix (d, e) by MRRR.
// range: 'I' uses [il, iu] (1-based), 'V' uses (vl, vu].
void tridiagonal_solve(Eigen::VectorXd d, Eigen::VectorXd e, char range, double vl, double vu,
                       int il, int iu, std::vector<double>& values, Eigen::MatrixXd& vectors) {
  const int n = static_cast<int>(d.size());
  int found = 0;
  lapack_logical tryrac = 1;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<int> support(2 * static_cast<std::size_t>(n));
  int columns = iu - il + 1;
  if (range == 'V') {
    // Workspace query: z(0) returns an upper bound on the eigenvalue count.
    double count = 0.0;
    Eigen::VectorXd d0 = d, e0 = e;
    const int info = LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', 'V', n, d0.data(), e0.data(), vl, vu, 0,
                                    0, &found, w.data(), &count, n, -1, support.data(), &tryrac);
    if (info != 0) throw NumericError("dstemr query failed with info = " + std::to_string(info));
    columns = std::max(1, static_cast<int>(count));
    tryrac = 1;
  }
  Eigen::MatrixXd z(n, columns);
  const int info = LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', range, n, d.data(), e.data(), vl, vu, il,
                                  iu, &found, w.data(), z.data(), n, columns, support.data(), &tryrac);
  if (info != 0) throw NumericError("dstemr failed with info = " + std::to_string(info));
  values.assign(w.begin(), w.begin() + found);
  vectors = z.leftCols(found);
}

// Householder reduction to tridiagonal form (Eigen), MRRR on the tridiagonal
// matrix (LAPACK) and back-transformation of the wanted vectors only.
template <typename Matrix>
RawEigen reduce_and_solve(const Matrix& a, char range, double vl, double vu, int il, int iu) {
  const Eigen::Index n = a.rows();
  RawEigen out;
  if (n == 1) {
    const double v = std::real(a(0, 0));
    if (range == 'I' || (v > vl && v <= vu)) {
      out.values = {v};
      out.vectors = Eigen::MatrixXcd::Ones(1, 1);
    } else {
      out.vectors = Eigen::MatrixXcd(1, 0);
    }
    return out;
  }
  Eigen::Tridiagonalization<Matrix> tri(a);
  Eigen::VectorXd d = tri.diagonal().real();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e.head(n - 1) = tri.subDiagonal().real();
  Eigen::MatrixXd z;
  tridiagonal_solve(std::move(d), std::move(e), range, vl, vu, il, iu, out.values, z);
  if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
    out.vectors = (tri.matrixQ() * z).template cast<Complex>();
  } else {
    out.vectors = tri.matrixQ() * z.cast<Complex>();
  }
  return out;
}

RawEigen dense_solve(const HamiltonianMatrix& h, char range, double vl, double vu, int il, int iu) {
  if (h.is_real()) return reduce_and_solve(h.real_dense(), range, vl, vu, il, iu);
  return reduce_and_solve(h.to_dense(), range, vl, vu, il, iu);
}

RawEigen lanczos_solve(const HamiltonianMatrix& h, std::size_t k, const SolverOptions& options) {
  auto op = [&h](const Eigen::VectorXcd& v) { return h.apply(v); };
  auto res = lanczos_lowest(op, h.dim(), k, options.tolerance);
  if (res.values.size() < k) {
    std::ostringstream msg;
    msg << "lanczos found only " << res.values.size() << " of " << k
        << " eigenpairs (degenerate spectrum or invariant start subspace)";
    throw NumericError(msg.str());
  }
  return {std::move(res.values), std::move(res.vectors)};
}

Eigen::Index leading_index(const Eigen::VectorXcd& v) {
  const double biggest = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= (1.0 - 1e-8) * biggest) return i;
  }
  return 0;
}

// Within clusters of numerically equal eigenvalues, order by leading index.
void order_degenerate(RawEigen& raw) {
  const std::size_t k = raw.values.size();
  if (k < 2) return;
  const double span = std::max(std::abs(raw.values.back() - raw.values.front()),
                               std::abs(raw.values.front()));
  const double tol = 1e-10 * std::max(span, 1e-300);
  std::size_t start = 0;
  while (start < k) {
    std::size_t stop = start + 1;
    while (stop < k && raw.values[stop] - raw.values[stop - 1] < tol) ++stop;
    if (stop - start > 1) {
      std::vector<std::size_t> order(stop - start);
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return leading_index(raw.vectors.col(static_cast<Eigen::Index>(a))) <
               leading_index(raw.vectors.col(static_cast<Eigen::Index>(b)));
      });
      Eigen::MatrixXcd block(raw.vectors.rows(), static_cast<Eigen::Index>(order.size()));
      std::vector<double> vals(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        block.col(static_cast<Eigen::Index>(i)) = raw.vectors.col(static_cast<Eigen::Index>(order[i]));
        vals[i] = raw.values[order[i]];
      }
      for (std::size_t i = 0; i < order.size(); ++i) {
        raw.vectors.col(static_cast<Eigen::Index>(start + i)) = block.col(static_cast<Eigen::Index>(i));
        raw.values[start + i] = vals[i];
      }
    }
    start = stop;
  }
}

EigenSolution finish(const HamiltonianMatrix& h, RawEigen raw, const SolverOptions& options) {
  fix_gauge(raw.vectors);
  order_degenerate(raw);
  EigenSolution sol;
  sol.energies = std::move(raw.values);
  sol.states = std::move(raw.vectors);
  sol.basis = h.basis();
  if (sol.size() < 2) sol.qubit_indices = {0, 0};

  const double residual = max_residual(h, sol);
  const double bound = options.residual_tolerance * std::max(h.norm_inf(), 1e-300);
  if (residual > bound) {
    std::ostringstream msg;
    msg << "eigensolver residual " << residual << " exceeds " << bound << " for " << h.label();
    throw NumericError(msg.str());
  }
  return sol;
}

}  // namespace

double EigenSolution::omega_q() const {
  return energies.at(qubit_indices.second) - energies.at(qubit_indices.first);
}

void fix_gauge(Eigen::MatrixXcd& states) {
  for (Eigen::Index c = 0; c < states.cols(); ++c) {
    auto col = states.col(c);
    const Complex lead = col(leading_index(col));
    if (std::abs(lead) == 0.0) continue;
    col *= std::conj(lead) / std::abs(lead);
    // Make the pivot exactly real.
    const Eigen::Index i = leading_index(col);
    col(i) = Complex(std::abs(col(i)), 0.0);
  }
}

EigenSolution eigensolve(const HamiltonianMatrix& h, std::size_t k, const SolverOptions& options) {
  if (k == 0 || k > h.dim()) {
    std::ostringstream msg;
    msg << "eigensolve: requested " << k << " eigenpairs of a " << h.dim() << "-dimensional matrix";
    throw InvalidParameter(msg.str());
  }
  if (h.dim() <= options.dense_limit) {
    return finish(h, dense_solve(h, 'I', 0.0, 0.0, 1, static_cast<int>(k)), options);
  }
  return finish(h, lanczos_solve(h, k, options), options);
}

EigenSolution eigensolve_below(const HamiltonianMatrix& h, double upper,
                               const SolverOptions& options) {
  if (h.dim() == 0) throw InvalidParameter("eigensolve_below: empty matrix");
  if (h.dim() <= options.dense_limit) {
    const double lower = -h.norm_inf() - 1.0;
    if (upper <= lower) return eigensolve(h, 1, options);
    RawEigen raw = dense_solve(h, 'V', lower, upper, 0, 0);
    if (raw.values.empty()) return eigensolve(h, 1, options);
    return finish(h, std::move(raw), options);
  }
  std::size_t k = std::min<std::size_t>(16, h.dim());
  while (true) {
    RawEigen raw = lanczos_solve(h, k, options);
    if (raw.values.back() > upper || k == h.dim()) {
      std::size_t keep = 0;
      while (keep < raw.values.size() && raw.values[keep] <= upper) ++keep;
      keep = std::max<std::size_t>(keep, 1);
      raw.values.resize(keep);
      raw.vectors = raw.vectors.leftCols(static_cast<Eigen::Index>(keep)).eval();
      return finish(h, std::move(raw), options);
    }
    k = std::min(h.dim(), 2 * k);
  }
}

double max_residual(const HamiltonianMatrix& h, const EigenSolution& sol) {
  if (sol.size() == 0) return 0.0;
  Eigen::MatrixXcd r = h.apply(sol.states);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    worst = std::max(worst, (r.col(c) - sol.energies[i] * sol.states.col(c)).norm());
  }
  return worst;
}

double orthonormality_defect(const EigenSolution& sol) {
  if (sol.size() == 0) return 0.0;
  Eigen::MatrixXcd gram = sol.states.adjoint() * sol.states;
  gram -= Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  return gram.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

WellRegion find_shallow_well(const PhaseQubitEnergies& energies, const PhaseGrid& grid) {
  std::vector<double> minima;
  for (double phi : potential_minima(energies)) {
    if (phi >= grid.phi_min && phi <= grid.phi_max) minima.push_back(phi);
  }
  if (minima.size() < 2) {
    throw NoMetastableQubit("potential has a single well at this bias; no metastable qubit");
  }
  auto by_depth = [&](double a, double b) { return energies.potential(a) < energies.potential(b); };
  const double deep = *std::min_element(minima.begin(), minima.end(), by_depth);
  const double shallow = *std::max_element(minima.begin(), minima.end(), by_depth);
  const double scale = energies.josephson + energies.inductive;
  if (energies.potential(shallow) - energies.potential(deep) <= 1e-9 * scale) {
    throw AmbiguousWell("both potential wells are equally deep (symmetric bias); "
                        "metastable well is ambiguous");
  }

  WellRegion region;
  region.phi_min = shallow;
  region.potential_min = energies.potential(shallow);
  region.phi_lo = grid.phi_min;
  region.phi_hi = grid.phi_max;
  double barrier = std::numeric_limits<double>::infinity();
  for (double phi : potential_maxima(energies)) {
    if (phi < shallow && phi > region.phi_lo) region.phi_lo = phi;
    if (phi > shallow && phi < region.phi_hi) region.phi_hi = phi;
  }
  for (double phi : potential_maxima(energies)) {
    if (phi == region.phi_lo || phi == region.phi_hi) {
      barrier = std::min(barrier, energies.potential(phi));
    }
  }
  region.barrier_top = barrier;
  return region;
}

double localization_mass(const EigenSolution& sol, std::size_t i, const WellRegion& region) {
  const auto* grid = std::get_if<PhaseGrid>(&sol.basis);
  if (!grid) throw IncompatibleBasis("localization_mass needs a phase grid solution");
  const auto col = sol.states.col(static_cast<Eigen::Index>(i));
  double inside = 0.0;
  for (std::size_t j = 0; j < grid->n_points; ++j) {
    const double phi = grid->point(j);
    if (phi >= region.phi_lo && phi <= region.phi_hi) inside += std::norm(col(static_cast<Eigen::Index>(j)));
  }
  return inside / col.squaredNorm();
}

EigenSolution select_metastable_qubit(const EigenSolution& sol, const PhaseQubitEnergies& energies) {
  const auto* grid = std::get_if<PhaseGrid>(&sol.basis);
  if (!grid) throw IncompatibleBasis("metastable selection needs a phase grid solution");
  if (sol.size() == 0) throw NoMetastableQubit("empty eigensolution");
  const WellRegion region = find_shallow_well(energies, *grid);

  // The solution may come from a shifted Hamiltonian; recover the shift from
  // the lowest state so energies can be compared with the barrier.
  const HamiltonianMatrix h = build_phase_qubit_hamiltonian(energies, *grid);
  const Eigen::VectorXcd psi0 = sol.state(0);
  const double offset = sol.energies[0] - h.matrix_element(psi0, psi0).real() / psi0.squaredNorm();

  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < sol.size() && picked.size() < 2; ++i) {
    if (sol.energies[i] - offset >= region.barrier_top) break;
    if (localization_mass(sol, i, region) >= 0.5) picked.push_back(i);
  }
  if (picked.size() < 2) {
    std::ostringstream msg;
    msg << "no metastable qubit at bias " << energies.bias << ": " << picked.size()
        << " localized state(s) below the barrier (barrier height "
        << region.barrier_top - region.potential_min << " GHz)";
    throw NoMetastableQubit(msg.str());
  }
  EigenSolution out = sol;
  out.qubit_indices = {picked[0], picked[1]};
  return out;
}

EigenSolution select_metastable_qubit(const EigenSolution& sol, const PhaseQubitParams& params) {
  return select_metastable_qubit(sol, derive_energies(params));
}

EigenSolution solve_phase_qubit(const PhaseQubitParams& params, const PhaseGrid& grid,
                                const SolverOptions& options) {
  const PhaseQubitEnergies energies = derive_energies(params);
  const WellRegion region = find_shallow_well(energies, grid);
  const HamiltonianMatrix h = build_phase_qubit_hamiltonian(energies, grid);
  const double depth = region.barrier_top - region.potential_min;
  const EigenSolution sol = eigensolve_below(h, region.barrier_top + 0.05 * depth, options);
  return select_metastable_qubit(sol, energies);
}

}  // namespace couplinglab

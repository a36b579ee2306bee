#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "couplinglab/errors.hpp"
#include "couplinglab/spectral.hpp"

namespace couplinglab {

LanczosResult lanczos_lowest(const LinearOperator& apply, std::size_t dim, std::size_t k,
                             double tolerance, std::size_t max_basis) {
  if (k == 0 || k > dim) throw InvalidParameter("lanczos: need 0 < k <= dim");
  if (max_basis == 0 || max_basis > dim) max_basis = dim;
  const auto n = static_cast<Eigen::Index>(dim);

  std::mt19937_64 rng(20110519);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = Complex(gauss(rng), gauss(rng));
  start.normalize();

  std::vector<Eigen::VectorXcd> basis{start};
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis[j] and basis[j+1]
  std::size_t target = std::min(max_basis, std::max<std::size_t>(2 * k + 40, 80));
  bool exhausted = false;

  LanczosResult result;
  while (true) {
    while (alpha.size() < target && !exhausted) {
      const std::size_t j = alpha.size();
      Eigen::VectorXcd w = apply(basis[j]);
      const double a = basis[j].dot(w).real();
      alpha.push_back(a);
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) w -= q.dot(w) * q;
      }
      const double b = w.norm();
      if (basis.size() == dim || b < 1e-14 * std::max(1.0, std::abs(a))) {
        exhausted = true;
        break;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd off(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index i = 0; i + 1 < m; ++i) off(i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd& theta = tri.eigenvalues();
    const Eigen::MatrixXd& s = tri.eigenvectors();

    const std::size_t found = std::min<std::size_t>(k, static_cast<std::size_t>(m));
    const double scale = std::max(1.0, theta.cwiseAbs().maxCoeff());
    const double tail = (exhausted || beta.size() < alpha.size()) ? 0.0 : beta.back();
    bool converged = true;
    for (std::size_t i = 0; i < found; ++i) {
      if (tail * std::abs(s(m - 1, static_cast<Eigen::Index>(i))) > tolerance * scale) {
        converged = false;
      }
    }
    if (converged || exhausted || alpha.size() >= max_basis) {
      if (!converged && !exhausted) {
        throw NumericError("lanczos: no convergence within the Krylov budget");
      }
      result.values.assign(theta.data(), theta.data() + found);
      result.vectors = Eigen::MatrixXcd::Zero(n, static_cast<Eigen::Index>(found));
      for (std::size_t i = 0; i < found; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
          result.vectors.col(static_cast<Eigen::Index>(i)) +=
              s(j, static_cast<Eigen::Index>(i)) * basis[static_cast<std::size_t>(j)];
        }
        result.vectors.col(static_cast<Eigen::Index>(i)).normalize();
      }
      result.iterations = alpha.size();
      return result;
    }
    target = std::min(max_basis, 2 * target);
  }
}

}  // namespace couplinglab

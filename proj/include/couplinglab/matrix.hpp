// Hermitian operator matrices tagged with the basis they act in.
#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "couplinglab/basis.hpp"

namespace couplinglab {

using Complex = std::complex<double>;
using SparseComplex = Eigen::SparseMatrix<Complex>;

/// A Hermitian matrix (Hamiltonian or coupling operator) plus its basis.
///
/// Grid operators are stored densely as separate real and imaginary parts
/// (either may be empty, meaning zero), which keeps the common real-symmetric
/// case at half the memory of a complex matrix. Charge-lattice operators are
/// stored sparse.
class HamiltonianMatrix {
 public:
  HamiltonianMatrix() = default;

  static HamiltonianMatrix dense(Eigen::MatrixXd real_part, Eigen::MatrixXd imag_part,
                                 BasisSpec basis, std::string label);
  static HamiltonianMatrix sparse(SparseComplex entries, BasisSpec basis, std::string label);

  std::size_t dim() const { return dim_; }
  const BasisSpec& basis() const { return basis_; }
  const std::string& label() const { return label_; }
  bool is_sparse() const { return std::holds_alternative<SparseComplex>(storage_); }
  /// True when every entry has zero imaginary part.
  bool is_real() const;

  Complex operator()(std::size_t row, std::size_t col) const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& v) const;
  /// <bra|M|ket>.
  Complex matrix_element(const Eigen::VectorXcd& bra, const Eigen::VectorXcd& ket) const;

  Eigen::MatrixXcd to_dense() const;
  /// Real part as a dense matrix; only meaningful when is_real().
  Eigen::MatrixXd real_dense() const;

  double max_abs() const;
  /// Max row sum of absolute values, an upper bound on the spectral norm.
  double norm_inf() const;
  /// max|M - M^dagger| / max|M| (0 for the zero matrix).
  double hermiticity_defect() const;

  /// M + shift * identity.
  HamiltonianMatrix shifted(double shift) const;

  /// Writes one row per line, entries as `re+imj`, space separated.
  void dump(std::ostream& out) const;

 private:
  struct DenseParts {
    Eigen::MatrixXd re;
    Eigen::MatrixXd im;
  };

  std::variant<DenseParts, SparseComplex> storage_;
  BasisSpec basis_;
  std::string label_;
  std::size_t dim_ = 0;
};

/// Reads a matrix written by HamiltonianMatrix::dump.
Eigen::MatrixXcd read_matrix_dump(std::istream& in);

}  // namespace couplinglab

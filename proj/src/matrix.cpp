#include "couplinglab/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "couplinglab/errors.hpp"

namespace couplinglab {

HamiltonianMatrix HamiltonianMatrix::dense(Eigen::MatrixXd real_part, Eigen::MatrixXd imag_part,
                                           BasisSpec basis, std::string label) {
  const auto n = static_cast<Eigen::Index>(basis_dim(basis));
  if (real_part.size() != 0 && (real_part.rows() != n || real_part.cols() != n)) {
    throw IncompatibleBasis("real part does not match basis dimension");
  }
  if (imag_part.size() != 0 && (imag_part.rows() != n || imag_part.cols() != n)) {
    throw IncompatibleBasis("imaginary part does not match basis dimension");
  }
  HamiltonianMatrix m;
  m.storage_ = DenseParts{std::move(real_part), std::move(imag_part)};
  m.basis_ = std::move(basis);
  m.label_ = std::move(label);
  m.dim_ = static_cast<std::size_t>(n);
  return m;
}

HamiltonianMatrix HamiltonianMatrix::sparse(SparseComplex entries, BasisSpec basis,
                                            std::string label) {
  const auto n = static_cast<Eigen::Index>(basis_dim(basis));
  if (entries.rows() != n || entries.cols() != n) {
    throw IncompatibleBasis("sparse matrix does not match basis dimension");
  }
  entries.makeCompressed();
  HamiltonianMatrix m;
  m.storage_ = std::move(entries);
  m.basis_ = std::move(basis);
  m.label_ = std::move(label);
  m.dim_ = static_cast<std::size_t>(n);
  return m;
}

bool HamiltonianMatrix::is_real() const {
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    return d->im.size() == 0 || d->im.cwiseAbs().maxCoeff() == 0.0;
  }
  const auto& s = std::get<SparseComplex>(storage_);
  for (Eigen::Index k = 0; k < s.outerSize(); ++k) {
    for (SparseComplex::InnerIterator it(s, k); it; ++it) {
      if (it.value().imag() != 0.0) return false;
    }
  }
  return true;
}

Complex HamiltonianMatrix::operator()(std::size_t row, std::size_t col) const {
  const auto r = static_cast<Eigen::Index>(row);
  const auto c = static_cast<Eigen::Index>(col);
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    const double re = d->re.size() ? d->re(r, c) : 0.0;
    const double im = d->im.size() ? d->im(r, c) : 0.0;
    return {re, im};
  }
  return std::get<SparseComplex>(storage_).coeff(r, c);
}

Eigen::VectorXcd HamiltonianMatrix::apply(const Eigen::VectorXcd& v) const {
  if (static_cast<std::size_t>(v.size()) != dim_) {
    throw IncompatibleBasis("vector length does not match matrix dimension");
  }
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    const Eigen::VectorXd vr = v.real();
    const Eigen::VectorXd vi = v.imag();
    if (d->re.size()) {
      out.real() += d->re * vr;
      out.imag() += d->re * vi;
    }
    if (d->im.size()) {
      out.real() -= d->im * vi;
      out.imag() += d->im * vr;
    }
    return out;
  }
  return std::get<SparseComplex>(storage_) * v;
}

Eigen::MatrixXcd HamiltonianMatrix::apply(const Eigen::MatrixXcd& v) const {
  if (static_cast<std::size_t>(v.rows()) != dim_) {
    throw IncompatibleBasis("block row count does not match matrix dimension");
  }
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(v.rows(), v.cols());
    const Eigen::MatrixXd vr = v.real();
    const Eigen::MatrixXd vi = v.imag();
    if (d->re.size()) {
      out.real() += d->re * vr;
      out.imag() += d->re * vi;
    }
    if (d->im.size()) {
      out.real() -= d->im * vi;
      out.imag() += d->im * vr;
    }
    return out;
  }
  return std::get<SparseComplex>(storage_) * v;
}

Complex HamiltonianMatrix::matrix_element(const Eigen::VectorXcd& bra,
                                          const Eigen::VectorXcd& ket) const {
  return bra.dot(apply(ket));  // Eigen's dot conjugates the left operand
}

Eigen::MatrixXcd HamiltonianMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    if (d->re.size()) out.real() = d->re;
    if (d->im.size()) out.imag() = d->im;
    return out;
  }
  return Eigen::MatrixXcd(std::get<SparseComplex>(storage_));
}

Eigen::MatrixXd HamiltonianMatrix::real_dense() const {
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    if (d->re.size()) return d->re;
    return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  }
  return to_dense().real();
}

double HamiltonianMatrix::max_abs() const {
  if (dim_ == 0) return 0.0;
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    if (d->im.size() == 0) return d->re.size() ? d->re.cwiseAbs().maxCoeff() : 0.0;
    if (d->re.size() == 0) return d->im.cwiseAbs().maxCoeff();
    return (d->re.array().square() + d->im.array().square()).sqrt().maxCoeff();
  }
  double best = 0.0;
  const auto& s = std::get<SparseComplex>(storage_);
  for (Eigen::Index k = 0; k < s.outerSize(); ++k) {
    for (SparseComplex::InnerIterator it(s, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

double HamiltonianMatrix::norm_inf() const {
  if (dim_ == 0) return 0.0;
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    if (!d->im.size()) return d->re.cwiseAbs().rowwise().sum().maxCoeff();
    return (d->re.array().square() + d->im.array().square()).sqrt().rowwise().sum().maxCoeff();
  }
  const auto& s = std::get<SparseComplex>(storage_);
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(s.rows());
  for (Eigen::Index k = 0; k < s.outerSize(); ++k) {
    for (SparseComplex::InnerIterator it(s, k); it; ++it) rows(it.row()) += std::abs(it.value());
  }
  return rows.maxCoeff();
}

double HamiltonianMatrix::hermiticity_defect() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  if (const auto* d = std::get_if<DenseParts>(&storage_)) {
    // Hermitian <=> real part symmetric and imaginary part antisymmetric.
    if (d->re.size()) worst = std::max(worst, (d->re - d->re.transpose()).cwiseAbs().maxCoeff());
    if (d->im.size()) worst = std::max(worst, (d->im + d->im.transpose()).cwiseAbs().maxCoeff());
  } else {
    const auto& s = std::get<SparseComplex>(storage_);
    SparseComplex diff = s - SparseComplex(s.adjoint());
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
      for (SparseComplex::InnerIterator it(diff, k); it; ++it) {
        worst = std::max(worst, std::abs(it.value()));
      }
    }
  }
  return worst / scale;
}

HamiltonianMatrix HamiltonianMatrix::shifted(double shift) const {
  HamiltonianMatrix out = *this;
  const auto n = static_cast<Eigen::Index>(dim_);
  if (auto* d = std::get_if<DenseParts>(&out.storage_)) {
    if (d->re.size() == 0) d->re = Eigen::MatrixXd::Zero(n, n);
    d->re.diagonal().array() += shift;
  } else {
    auto& s = std::get<SparseComplex>(out.storage_);
    SparseComplex id(n, n);
    id.setIdentity();
    s += shift * id;
    s.makeCompressed();
  }
  return out;
}

void HamiltonianMatrix::dump(std::ostream& out) const {
  char buf[64];
  auto put = [&](double x) {
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    out.write(buf, res.ptr - buf);
  };
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const Complex z = (*this)(i, j);
      if (j) out << ' ';
      put(z.real());
      if (!std::signbit(z.imag())) out << '+';
      put(z.imag());
      out << 'j';
    }
    out << '\n';
  }
}

Eigen::MatrixXcd read_matrix_dump(std::istream& in) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream tokens(line);
    std::string token;
    std::vector<Complex> row;
    while (tokens >> token) {
      if (token.size() < 2 || token.back() != 'j') {
        throw InvalidParameter("malformed matrix entry: " + token);
      }
      // The imaginary part starts at the last sign that is not an exponent sign.
      std::size_t split = std::string::npos;
      for (std::size_t k = token.size() - 1; k > 0; --k) {
        if ((token[k] == '+' || token[k] == '-') && token[k - 1] != 'e' && token[k - 1] != 'E') {
          split = k;
          break;
        }
      }
      if (split == std::string::npos) throw InvalidParameter("malformed matrix entry: " + token);
      const double re = std::stod(token.substr(0, split));
      const double im = std::stod(token.substr(split, token.size() - split - 1));
      row.emplace_back(re, im);
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw InvalidParameter("matrix dump is not square");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace couplinglab

#include <doctest.h>

#include <sstream>

#include "couplinglab/basis.hpp"
#include "couplinglab/errors.hpp"
#include "couplinglab/matrix.hpp"

using namespace couplinglab;

TEST_CASE("phase grid includes both endpoints") {
  const PhaseGrid g{-1.0, 3.0, 5};
  CHECK(g.spacing() == doctest::Approx(1.0));
  const auto p = g.points();
  REQUIRE(p.size() == 5);
  CHECK(p.front() == -1.0);
  CHECK(p.back() == doctest::Approx(3.0));
}

TEST_CASE("phase grid validation") {
  CHECK_THROWS_AS(PhaseGrid({0.0, 1.0, 10}).validate(), InvalidParameter);
  CHECK_THROWS_AS(PhaseGrid({1.0, 0.0, 128}).validate(), InvalidParameter);
  CHECK_NOTHROW(PhaseGrid({0.0, 1.0, 64}).validate());
  CHECK_NOTHROW(PhaseGrid({0.0, 1.0, 3}).validate(2));
}

TEST_CASE("charge lattice sites and indices") {
  SUBCASE("full tensor product") {
    const ChargeLattice l{4, 5, LatticeSector::Full};
    CHECK(l.dim() == 9u * 11u);
    const auto sites = l.sites();
    REQUIRE(sites.size() == l.dim());
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const auto idx = l.index_of(sites[i].n_p, sites[i].n_m);
      REQUIRE(idx.has_value());
      CHECK(*idx == i);
    }
    CHECK(sites.front() == ChargeSite{-4, -5});
    CHECK(sites.back() == ChargeSite{4, 5});
  }
  SUBCASE("physical sector keeps even n_p + n_m") {
    const ChargeLattice l{16, 16};
    CHECK(l.dim() == (33u * 33u + 1u) / 2u);
    const auto sites = l.sites();
    REQUIRE(sites.size() == l.dim());
    for (std::size_t i = 0; i < sites.size(); ++i) {
      CHECK((sites[i].n_p + sites[i].n_m) % 2 == 0);
      CHECK(l.index_of(sites[i].n_p, sites[i].n_m) == i);
    }
    CHECK_FALSE(l.index_of(0, 1).has_value());
    CHECK_FALSE(l.index_of(17, 1).has_value());
  }
  CHECK_THROWS_AS(ChargeLattice({3, 8}).validate(), InvalidParameter);
}

TEST_CASE("dense matrix with real and imaginary parts") {
  Eigen::MatrixXd re(2, 2), im(2, 2);
  re << 1, 2, 2, 3;
  im << 0, -1, 1, 0;
  const auto h = HamiltonianMatrix::dense(re, im, PhaseGrid{0, 1, 2}, "test");
  CHECK(h.dim() == 2);
  CHECK_FALSE(h.is_real());
  CHECK(h(0, 1) == Complex(2, -1));
  CHECK(h.hermiticity_defect() == 0.0);
  CHECK(h.norm_inf() == doctest::Approx(3.0 + std::sqrt(5.0)));

  Eigen::VectorXcd v(2);
  v << Complex(1, 1), Complex(0, 2);
  CHECK((h.apply(v) - h.to_dense() * v).norm() < 1e-15);
  CHECK(std::abs(h.matrix_element(v, v) - v.dot(h.to_dense() * v)) < 1e-14);

  const auto s = h.shifted(1.5);
  CHECK(s(0, 0) == Complex(2.5, 0));
  CHECK(s(1, 1) == Complex(4.5, 0));
}

TEST_CASE("sparse and dense agree") {
  SparseComplex m(3, 3);
  m.insert(0, 1) = Complex(0, 1);
  m.insert(1, 0) = Complex(0, -1);
  m.insert(2, 2) = 4.0;
  const auto h = HamiltonianMatrix::sparse(m, PhaseGrid{0, 1, 3}, "s");
  CHECK(h.is_sparse());
  CHECK_FALSE(h.is_real());
  CHECK(h.hermiticity_defect() == 0.0);
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Random(3, 2);
  CHECK((h.apply(block) - h.to_dense() * block).norm() < 1e-15);
}

TEST_CASE("non-Hermitian input is measurable") {
  Eigen::MatrixXd re(2, 2);
  re << 0, 1, 0, 0;
  const auto h = HamiltonianMatrix::dense(re, {}, PhaseGrid{0, 1, 2}, "x");
  CHECK(h.hermiticity_defect() == doctest::Approx(1.0));
}

TEST_CASE("matrix dump round-trips") {
  Eigen::MatrixXd re = Eigen::MatrixXd::Random(4, 4);
  Eigen::MatrixXd im = Eigen::MatrixXd::Random(4, 4);
  const auto h = HamiltonianMatrix::dense(re, im, PhaseGrid{0, 1, 4}, "dump");
  std::stringstream s;
  h.dump(s);
  const Eigen::MatrixXcd back = read_matrix_dump(s);
  CHECK(back == h.to_dense());
}

TEST_CASE("basis descriptions") {
  CHECK(basis_dim(BasisSpec{PhaseGrid{0, 1, 100}}) == 100);
  CHECK(basis_dim(BasisSpec{ChargeLattice{4, 4, LatticeSector::Full}}) == 81);
  CHECK_FALSE(describe(BasisSpec{ChargeLattice{}}).empty());
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "couplinglab/circuits.hpp"
#include "couplinglab/errors.hpp"
#include "couplinglab/spectral.hpp"

using namespace couplinglab;

namespace {

HamiltonianMatrix small(const Eigen::MatrixXd& m) {
  return HamiltonianMatrix::dense(m, {}, PhaseGrid{0, 1, static_cast<std::size_t>(m.rows())}, "small");
}

void check_solution(const HamiltonianMatrix& h, const EigenSolution& sol) {
  CHECK(orthonormality_defect(sol) < 1e-10);
  CHECK(max_residual(h, sol) <= 1e-8 * h.norm_inf());
  for (std::size_t i = 1; i < sol.size(); ++i) CHECK(sol.energies[i] >= sol.energies[i - 1]);
}

}  // namespace

TEST_CASE("diagonal matrix") {
  Eigen::MatrixXd m = Eigen::Vector3d(3, 1, 2).asDiagonal();
  const auto h = small(m);
  const auto sol = eigensolve(h, 3);
  CHECK(sol.energies[0] == doctest::Approx(1.0));
  CHECK(sol.energies[1] == doctest::Approx(2.0));
  CHECK(sol.energies[2] == doctest::Approx(3.0));
  check_solution(h, sol);
}

TEST_CASE("pauli x") {
  const double g = 0.37;
  Eigen::MatrixXd m(2, 2);
  m << 0, g, g, 0;
  const auto sol = eigensolve(small(m), 2);
  CHECK(sol.energies[0] == doctest::Approx(-g));
  CHECK(sol.energies[1] == doctest::Approx(g));
}

TEST_CASE("invalid requests") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(eigensolve(small(m), 0), InvalidParameter);
  CHECK_THROWS_AS(eigensolve(small(m), 3), InvalidParameter);
}

TEST_CASE("gauge fixing") {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Random(20, 4);
  fix_gauge(v);
  Eigen::MatrixXcd again = v;
  fix_gauge(again);
  CHECK((again - v).cwiseAbs().maxCoeff() == 0.0);
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index pivot = 0;
    v.col(c).cwiseAbs().maxCoeff(&pivot);
    CHECK(v(pivot, c).imag() == 0.0);
    CHECK(v(pivot, c).real() > 0.0);
  }
}

TEST_CASE("real symmetric input gives real gauge-fixed vectors") {
  FluxQubitParams p;
  p.frustration = 0.5;
  const auto h = build_flux_qubit_hamiltonian(p, ChargeLattice{});
  const auto sol = eigensolve(h, 3);
  CHECK(sol.states.imag().cwiseAbs().maxCoeff() < 1e-10);
  check_solution(h, sol);
  CHECK(sol.energies[1] - sol.energies[0] < 0.5 * (sol.energies[2] - sol.energies[1]));
}

TEST_CASE("complex Hermitian input") {
  FluxQubitParams p;
  p.frustration = 0.503;
  const auto h = build_flux_qubit_hamiltonian(p, ChargeLattice{10, 10});
  CHECK_FALSE(h.is_real());
  const auto sol = eigensolve(h, 4);
  check_solution(h, sol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(), Eigen::EigenvaluesOnly);
  for (std::size_t i = 0; i < 4; ++i) CHECK(sol.energies[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-12));
}

TEST_CASE("lanczos agrees with the dense path") {
  FluxQubitParams p;
  p.frustration = 0.504;
  const auto h = build_flux_qubit_hamiltonian(p, ChargeLattice{12, 12});
  const auto dense = eigensolve(h, 3);
  SolverOptions lanczos;
  lanczos.dense_limit = 10;
  const auto iter = eigensolve(h, 3, lanczos);
  check_solution(h, iter);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(iter.energies[i] == doctest::Approx(dense.energies[i]).epsilon(1e-10));
    // Same states up to the gauge, which both paths fix identically.
    CHECK(std::abs(dense.state(i).dot(iter.state(i))) == doctest::Approx(1.0).epsilon(1e-8));
  }
  const auto below = eigensolve_below(h, dense.energies[2] + 1e-9, lanczos);
  CHECK(below.size() == 3);
}

TEST_CASE("eigensolve_below returns the window") {
  Eigen::MatrixXd m = Eigen::VectorXd::LinSpaced(10, 1.0, 10.0).asDiagonal();
  const auto h = small(m);
  CHECK(eigensolve_below(h, 4.5).size() == 4);
  CHECK(eigensolve_below(h, 0.5).size() == 1);
}

TEST_CASE("degenerate levels are ordered by leading index") {
  Eigen::MatrixXd m = Eigen::Vector4d(2, 1, 1, 3).asDiagonal();
  const auto sol = eigensolve(small(m), 3);
  Eigen::Index i0 = 0, i1 = 0;
  sol.state(0).cwiseAbs().maxCoeff(&i0);
  sol.state(1).cwiseAbs().maxCoeff(&i1);
  CHECK(i0 < i1);
}

TEST_CASE("lanczos on a plain operator") {
  const std::size_t n = 300;
  Eigen::VectorXd diag = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), 0.0, 10.0);
  auto op = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return diag.cast<Complex>().cwiseProduct(v); };
  const auto res = lanczos_lowest(op, n, 4, 1e-12);
  REQUIRE(res.values.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(res.values[i] == doctest::Approx(diag(static_cast<Eigen::Index>(i))).epsilon(1e-10));
}

TEST_CASE("metastable well selection") {
  PhaseQubitParams p;
  const auto grid = [](double bias) { return default_phase_grid(bias, 512); };

  SUBCASE("symmetric bias is ambiguous") {
    p.bias = 0.5;
    const auto e = derive_energies(p);
    CHECK_THROWS_AS(find_shallow_well(e, grid(0.5)), AmbiguousWell);
    CHECK_THROWS_AS(solve_phase_qubit(p, grid(0.5)), NoMetastableQubit);
  }
  SUBCASE("default bias selects two localized states") {
    p.bias = 0.58;
    const auto sol = solve_phase_qubit(p, grid(0.58));
    const auto region = find_shallow_well(derive_energies(p), grid(0.58));
    // The shallow well sits below the bias point at this flux.
    CHECK(region.phi_min < 2 * std::numbers::pi * 0.58);
    CHECK(localization_mass(sol, sol.qubit_indices.first, region) > 0.5);
    CHECK(localization_mass(sol, sol.qubit_indices.second, region) > 0.5);
    CHECK(sol.qubit_indices.first < sol.qubit_indices.second);
    // Deep-well states come first.
    CHECK(sol.qubit_indices.first > 0);
    CHECK(sol.omega_q() > 5.0);
    CHECK(sol.omega_q() < 8.0);
  }
  SUBCASE("past the working range there is no metastable qubit") {
    p.bias = 0.62;
    CHECK_THROWS_AS(solve_phase_qubit(p, grid(0.62)), NoMetastableQubit);
  }
  SUBCASE("selection ignores a constant shift of H") {
    p.bias = 0.57;
    const auto e = derive_energies(p);
    const auto h = build_phase_qubit_hamiltonian(e, grid(0.57));
    const auto region = find_shallow_well(e, grid(0.57));
    const double upper = region.barrier_top + 0.05 * (region.barrier_top - region.potential_min);
    const auto base = select_metastable_qubit(eigensolve_below(h, upper), e);
    for (double shift : {-1000.0, 37.5, 2000.0}) {
      const auto moved = select_metastable_qubit(eigensolve_below(h.shifted(shift), upper + shift), e);
      CHECK(moved.qubit_indices == base.qubit_indices);
    }
  }
}

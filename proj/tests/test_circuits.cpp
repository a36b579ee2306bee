#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "couplinglab/circuits.hpp"
#include "couplinglab/errors.hpp"
#include "couplinglab/spectral.hpp"

using namespace couplinglab;

namespace {

constexpr double kPi = std::numbers::pi;
// Hand values for the oracles, SI.
constexpr double kE = 1.602176634e-19;
constexpr double kH = 6.62607015e-34;

std::vector<double> sorted_spectrum(const HamiltonianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

}  // namespace

TEST_CASE("phase-qubit energy scales") {
  const PhaseQubitParams p;
  const PhaseQubitEnergies e = derive_energies(p);
  const double phi0 = kH / (2 * kE);
  CHECK(e.charging == doctest::Approx(kE * kE / (2 * 850e-15 * kH) * 1e-9).epsilon(1e-12));
  CHECK(e.charging == doctest::Approx(0.0228).epsilon(0.01));
  CHECK(e.josephson == doctest::Approx(984e-9 * phi0 / (2 * kPi * kH) * 1e-9).epsilon(1e-12));
  CHECK(e.josephson == doctest::Approx(489).epsilon(0.002));
  CHECK(e.inductive == doctest::Approx(std::pow(phi0 / (2 * kPi), 2) / (720e-12 * kH) * 1e-9).epsilon(1e-12));
  CHECK(e.inductive == doctest::Approx(227).epsilon(0.002));
  CHECK(e.beta() == doctest::Approx(2 * kPi * 720e-12 * 984e-9 / phi0).epsilon(1e-12));
  CHECK(e.beta() == doctest::Approx(2.15).epsilon(0.002));
}

TEST_CASE("phase-qubit parameter validation") {
  PhaseQubitParams p;
  p.capacitance = -1;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = PhaseQubitParams{};
  p.critical_current = 100e-9;  // beta < 1: single well
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  FluxQubitParams f;
  f.alpha = 0.4;
  CHECK_THROWS_AS(f.validate(), InvalidParameter);
}

TEST_CASE("phase-qubit potential is symmetric about pi at half flux") {
  PhaseQubitParams p;
  p.bias = 0.5;
  const auto e = derive_energies(p);
  for (double x : {0.1, 0.7, 1.9, 3.3}) {
    CHECK(e.potential(kPi + x) == doctest::Approx(e.potential(kPi - x)).epsilon(1e-12));
  }
  const auto minima = potential_minima(e);
  REQUIRE(minima.size() == 2);
  CHECK(minima[0] + minima[1] == doctest::Approx(2 * kPi).epsilon(1e-9));
}

TEST_CASE("phase-qubit harmonic limit") {
  PhaseQubitEnergies e = derive_energies(PhaseQubitParams{});
  e.josephson = 0.0;
  const double omega = std::sqrt(8 * e.charging * e.inductive);
  SUBCASE("fourier collocation") {
    const auto h = build_phase_qubit_hamiltonian(e, default_phase_grid(e.bias, 1024));
    CHECK(h.hermiticity_defect() < 1e-12);
    const auto sol = eigensolve(h, 5);
    for (std::size_t n = 0; n < 5; ++n) {
      CHECK(std::abs(sol.energies[n] - omega * (n + 0.5)) / (omega * (n + 0.5)) < 1e-6);
    }
  }
  SUBCASE("central differences converge at second order") {
    const auto h1 = build_phase_qubit_hamiltonian(
        e, default_phase_grid(e.bias, 1024, Differentiation::CentralDifference));
    const auto h2 = build_phase_qubit_hamiltonian(
        e, default_phase_grid(e.bias, 2047, Differentiation::CentralDifference));
    const double err1 = std::abs(eigensolve(h1, 1).energies[0] - 0.5 * omega);
    const double err2 = std::abs(eigensolve(h2, 1).energies[0] - 0.5 * omega);
    CHECK(err1 / (0.5 * omega) < 1e-3);
    CHECK(err1 / err2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("phase-qubit discretization is converged at the default bias") {
  const PhaseQubitParams p;
  const auto a = eigensolve(build_phase_qubit_hamiltonian(p, default_phase_grid(p.bias, 2048)), 4);
  const auto b = eigensolve(build_phase_qubit_hamiltonian(p, default_phase_grid(p.bias, 4096)), 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(a.energies[i] - b.energies[i]) / std::abs(b.energies[i]) < 1e-8);
  }
}

TEST_CASE("phase-qubit grid must contain the wells") {
  const PhaseQubitParams p;
  const PhaseGrid narrow{2 * kPi * p.bias - 1.0, 2 * kPi * p.bias + 1.0, 256};
  CHECK_THROWS_AS(build_phase_qubit_hamiltonian(p, narrow), DomainError);
  CHECK_THROWS_AS(build_phase_qubit_hamiltonian(p, PhaseGrid{0, 1, 10}), InvalidParameter);
}

TEST_CASE("flux-qubit kinetic terms alone are diagonal") {
  const FluxQubitParams p;
  const ChargeLattice l{6, 6, LatticeSector::Full};
  const auto h = build_flux_qubit_hamiltonian(p, l, FluxHamiltonianTerms{false, false});
  const auto sites = l.sites();
  const Eigen::MatrixXcd d = h.to_dense();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double expected = p.ep_ej() * sites[i].n_p * sites[i].n_p + p.em_ej() * sites[i].n_m * sites[i].n_m;
    CHECK(d(i, i).real() == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK((d - Eigen::MatrixXcd(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.em_ej() == doctest::Approx(2.0 / 40.0 / (1 + 2 * 0.68)));
}

TEST_CASE("flux-qubit Hamiltonian symmetries") {
  FluxQubitParams p;
  const ChargeLattice lattice{10, 10};

  SUBCASE("hermitian at any f") {
    for (double f : {0.5, 0.503, 0.27}) {
      p.frustration = f;
      CHECK(build_flux_qubit_hamiltonian(p, lattice).hermiticity_defect() < 1e-12);
    }
  }
  SUBCASE("parity n_m -> -n_m commutes at the degeneracy point") {
    p.frustration = 0.5;
    const auto h = build_flux_qubit_hamiltonian(p, lattice);
    CHECK(h.is_real());
    const auto sites = lattice.sites();
    Eigen::MatrixXcd parity = Eigen::MatrixXcd::Zero(h.dim(), h.dim());
    for (std::size_t i = 0; i < sites.size(); ++i) {
      parity(i, *lattice.index_of(sites[i].n_p, -sites[i].n_m)) = 1.0;
    }
    const Eigen::MatrixXcd d = h.to_dense();
    CHECK((d * parity - parity * d).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("spectrum is periodic in f") {
    p.frustration = 0.37;
    const auto a = sorted_spectrum(build_flux_qubit_hamiltonian(p, lattice));
    p.frustration = 1.37;
    const auto b = sorted_spectrum(build_flux_qubit_hamiltonian(p, lattice));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
  }
  SUBCASE("spectrum is even about f = 1/2") {
    p.frustration = 0.507;
    const auto a = sorted_spectrum(build_flux_qubit_hamiltonian(p, lattice));
    p.frustration = 0.493;
    const auto b = sorted_spectrum(build_flux_qubit_hamiltonian(p, lattice));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
  }
}

TEST_CASE("flux-qubit levels are anharmonic near the degeneracy point") {
  FluxQubitParams p;
  for (double f : {0.491, 0.495, 0.5, 0.505, 0.509}) {
    p.frustration = f;
    const auto sol = eigensolve(build_flux_qubit_hamiltonian(p, ChargeLattice{}), 3);
    CHECK(sol.energies[1] - sol.energies[0] < sol.energies[2] - sol.energies[1]);
  }
}

TEST_CASE("full lattice adds a decoupled copy of the spectrum") {
  const FluxQubitParams p;
  const auto phys = eigensolve(build_flux_qubit_hamiltonian(p, ChargeLattice{10, 10}), 2);
  const auto full = eigensolve(
      build_flux_qubit_hamiltonian(p, ChargeLattice{10, 10, LatticeSector::Full}), 4);
  // The lowest physical level appears in the full lattice spectrum.
  bool found = false;
  for (double e : full.energies) found = found || std::abs(e - phys.energies[0]) < 1e-10;
  CHECK(found);
}

TEST_CASE("operator matrices") {
  SUBCASE("charge has zero diagonal") {
    const auto q = build_operator(OperatorKind::Charge, default_phase_grid(0.58, 256));
    CHECK(q.hermiticity_defect() < 1e-12);
    for (std::size_t i = 0; i < q.dim(); ++i) CHECK(q(i, i) == Complex(0, 0));
  }
  SUBCASE("phase is diagonal multiplication") {
    const auto phi = build_operator(OperatorKind::Phase, PhaseGrid{0, 2 * kPi, 3});
    CHECK(phi(0, 0).real() == 0.0);
    CHECK(phi(1, 1).real() == doctest::Approx(kPi));
    CHECK(phi(2, 2).real() == doctest::Approx(2 * kPi));
    CHECK(phi(0, 1) == Complex(0, 0));
  }
  SUBCASE("cos^2 + sin^2 = 1 away from the cutoff") {
    const ChargeLattice l{8, 8};
    const double f = 0.317;
    const Eigen::MatrixXcd c = build_operator(OperatorKind::CosJ3, l, f).to_dense();
    const Eigen::MatrixXcd s = build_operator(OperatorKind::SinJ3, l, f).to_dense();
    const Eigen::MatrixXcd sum = c * c + s * s;
    const auto sites = l.sites();
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (std::abs(sites[i].n_m) > l.n_m_cutoff - 2) continue;
      for (std::size_t j = 0; j < sites.size(); ++j) {
        CHECK(std::abs(sum(i, j) - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }
  SUBCASE("sin shifted by a quarter flux quantum is cos") {
    const ChargeLattice l{6, 6};
    const Eigen::MatrixXcd s = build_operator(OperatorKind::SinJ3, l, 0.25).to_dense();
    const Eigen::MatrixXcd c = build_operator(OperatorKind::CosJ3, l, 0.0).to_dense();
    CHECK((s - c).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("all operators hermitian") {
    for (auto k : {OperatorKind::CosPhase, OperatorKind::Phase, OperatorKind::Charge}) {
      CHECK(build_operator(k, default_phase_grid(0.55, 128)).hermiticity_defect() < 1e-12);
    }
    for (auto k : {OperatorKind::CosJ3, OperatorKind::SinJ3, OperatorKind::ChargeM, OperatorKind::CosJ1}) {
      CHECK(build_operator(k, ChargeLattice{5, 5}, 0.41).hermiticity_defect() < 1e-12);
    }
  }
  SUBCASE("basis mismatch") {
    CHECK_THROWS_AS(build_operator(OperatorKind::CosJ3, default_phase_grid(0.5, 128)), IncompatibleBasis);
    CHECK_THROWS_AS(build_operator(OperatorKind::Charge, ChargeLattice{}), IncompatibleBasis);
  }
}

TEST_CASE("Fourier derivative is exact for band-limited periodic data") {
  // Endpoints included: the period is n * h.
  const std::size_t n = 64;
  const double period = 2 * kPi;
  const PhaseGrid g{0.0, period * (n - 1) / n, n};
  const Eigen::MatrixXd d1 = first_derivative_matrix(g);
  const Eigen::MatrixXd d2 = second_derivative_matrix(g);
  Eigen::VectorXd u(n), du(n), ddu(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.point(i);
    u(i) = std::sin(3 * x) + std::cos(5 * x);
    du(i) = 3 * std::cos(3 * x) - 5 * std::sin(5 * x);
    ddu(i) = -9 * std::sin(3 * x) - 25 * std::cos(5 * x);
  }
  CHECK((d1 * u - du).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((d2 * u - ddu).cwiseAbs().maxCoeff() < 1e-10);
}

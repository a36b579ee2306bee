#include "couplinglab/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "couplinglab/constants.hpp"
#include "couplinglab/errors.hpp"

namespace couplinglab {

namespace {

constexpr double kPi = std::numbers::pi;

// exp(i 2 pi f), exact when 4f is an integer so that f = 0.5 gives a real matrix.
Complex flux_phase(double frustration) {
  const double quarters = 4.0 * frustration;
  if (quarters == std::round(quarters)) {
    switch (((std::llround(quarters) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  return std::polar(1.0, 2.0 * kPi * frustration);
}

double potential_slope(const PhaseQubitEnergies& e, double phi) {
  return e.inductive * (phi - e.parabola_centre()) + e.josephson * std::sin(phi);
}

// Roots of U'(phi) in the +-2pi window where U' changes sign in the given direction.
std::vector<double> stationary_points(const PhaseQubitEnergies& e, bool minima) {
  const double lo = e.parabola_centre() - 2.0 * kPi;
  const double hi = e.parabola_centre() + 2.0 * kPi;
  constexpr int kSamples = 8192;
  const double step = (hi - lo) / kSamples;
  std::vector<double> roots;
  double a = lo;
  double fa = potential_slope(e, a);
  for (int i = 1; i <= kSamples; ++i) {
    double b = lo + step * i;
    double fb = potential_slope(e, b);
    const bool rising = fa < 0.0 && fb >= 0.0;
    const bool falling = fa > 0.0 && fb <= 0.0;
    if ((minima && rising) || (!minima && falling)) {
      double x0 = a, x1 = b, f0 = fa;
      for (int it = 0; it < 200 && x1 - x0 > 1e-15 * std::max(1.0, std::abs(x0)); ++it) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = potential_slope(e, mid);
        if ((fm < 0.0) == (f0 < 0.0)) {
          x0 = mid;
          f0 = fm;
        } else {
          x1 = mid;
        }
      }
      roots.push_back(0.5 * (x0 + x1));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

Eigen::MatrixXd toeplitz_symmetric(const std::vector<double>& column) {
  const auto n = static_cast<Eigen::Index>(column.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = column[static_cast<std::size_t>(std::abs(i - j))];
  }
  return m;
}

void require_lattice(const BasisSpec& basis, OperatorKind kind) {
  if (!std::holds_alternative<ChargeLattice>(basis)) {
    throw IncompatibleBasis(std::string(to_string(kind)) + " needs a charge lattice basis");
  }
}

void require_grid(const BasisSpec& basis, OperatorKind kind) {
  if (!std::holds_alternative<PhaseGrid>(basis)) {
    throw IncompatibleBasis(std::string(to_string(kind)) + " needs a phase grid basis");
  }
}

using Triplets = std::vector<Eigen::Triplet<Complex>>;

// Adds amplitude |site + shift><site| and its conjugate for every site whose
// shifted partner is inside the lattice.
void add_hopping(Triplets& out, const ChargeLattice& lattice, int dp, int dm, Complex amplitude) {
  const auto sites = lattice.sites();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto j = lattice.index_of(sites[i].n_p + dp, sites[i].n_m + dm);
    if (!j) continue;
    const auto row = static_cast<Eigen::Index>(*j);
    const auto col = static_cast<Eigen::Index>(i);
    out.emplace_back(row, col, amplitude);
    out.emplace_back(col, row, std::conj(amplitude));
  }
}

SparseComplex assemble(const ChargeLattice& lattice, const Triplets& triplets) {
  const auto n = static_cast<Eigen::Index>(lattice.dim());
  SparseComplex m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace

void PhaseQubitParams::validate() const {
  if (!(capacitance > 0.0) || !(inductance > 0.0) || !(critical_current > 0.0)) {
    throw InvalidParameter("phase qubit needs C, L and I0 > 0");
  }
  if (!std::isfinite(bias)) throw InvalidParameter("phase qubit bias must be finite");
  const double beta = 2.0 * kPi * inductance * critical_current / PhysicalConstants::flux_quantum;
  if (!(beta > 1.0)) {
    std::ostringstream msg;
    msg << "phase qubit needs beta = 2 pi L I0 / phi0 > 1 for a metastable well, got " << beta;
    throw InvalidParameter(msg.str());
  }
}

double PhaseQubitEnergies::parabola_centre() const { return 2.0 * kPi * bias; }

double PhaseQubitEnergies::potential(double phi) const {
  const double x = phi - parabola_centre();
  return 0.5 * inductive * x * x - josephson * std::cos(phi);
}

PhaseQubitEnergies derive_energies(const PhaseQubitParams& params) {
  params.validate();
  using C = PhysicalConstants;
  PhaseQubitEnergies e;
  e.charging = joules_to_ghz(C::e_charge * C::e_charge / (2.0 * params.capacitance));
  e.josephson = joules_to_ghz(params.critical_current * C::reduced_flux_quantum);
  e.inductive = joules_to_ghz(C::reduced_flux_quantum * C::reduced_flux_quantum / params.inductance);
  e.bias = params.bias;
  return e;
}

void FluxQubitParams::validate() const {
  if (!(ej_over_ec > 0.0)) throw InvalidParameter("flux qubit needs EJ/Ec > 0");
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw InvalidParameter("flux qubit needs 0.5 < alpha < 1 for a double well");
  }
  if (!(ej_ghz > 0.0)) throw InvalidParameter("flux qubit needs EJ/h > 0");
  if (!std::isfinite(frustration)) throw InvalidParameter("frustration must be finite");
}

PhaseGrid default_phase_grid(double bias, std::size_t n_points, Differentiation scheme) {
  const double centre = 2.0 * kPi * bias;
  return PhaseGrid{centre - 2.0 * kPi, centre + 2.0 * kPi, n_points, scheme};
}

std::vector<double> potential_minima(const PhaseQubitEnergies& energies) {
  return stationary_points(energies, true);
}

std::vector<double> potential_maxima(const PhaseQubitEnergies& energies) {
  return stationary_points(energies, false);
}

Eigen::MatrixXd first_derivative_matrix(const PhaseGrid& grid) {
  const std::size_t n = grid.n_points;
  const double h = grid.spacing();
  if (grid.differentiation == Differentiation::CentralDifference) {
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i + 1 < dim; ++i) {
      d(i, i + 1) = 0.5 / h;
      d(i + 1, i) = -0.5 / h;
    }
    return d;
  }
  // Periodic collocation with period n * h.
  const double unit = 2.0 * kPi / static_cast<double>(n);
  const double scale = unit / h;
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double half = 0.5 * static_cast<double>(k) * unit;
    c[k] = (n % 2 == 0) ? 0.5 * sign / std::tan(half) : 0.5 * sign / std::sin(half);
  }
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd d(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto k = static_cast<std::size_t>(((i - j) % dim + dim) % dim);
      d(i, j) = scale * c[k];
    }
  }
  return d;
}

Eigen::MatrixXd second_derivative_matrix(const PhaseGrid& grid) {
  const std::size_t n = grid.n_points;
  const double h = grid.spacing();
  std::vector<double> column(n, 0.0);
  if (grid.differentiation == Differentiation::CentralDifference) {
    column[0] = -2.0 / (h * h);
    if (n > 1) column[1] = 1.0 / (h * h);
    return toeplitz_symmetric(column);
  }
  const double unit = 2.0 * kPi / static_cast<double>(n);
  const double scale = (unit / h) * (unit / h);
  const bool even = (n % 2 == 0);
  column[0] = -kPi * kPi / (3.0 * unit * unit) + (even ? -1.0 / 6.0 : 1.0 / 12.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double half = 0.5 * static_cast<double>(k) * unit;
    const double s = std::sin(half);
    column[k] = even ? -0.5 * sign / (s * s) : -0.5 * sign * std::cos(half) / (s * s);
  }
  for (double& v : column) v *= scale;
  return toeplitz_symmetric(column);
}

HamiltonianMatrix build_phase_qubit_hamiltonian(const PhaseQubitEnergies& energies,
                                                const PhaseGrid& grid) {
  grid.validate();
  if (!(energies.charging > 0.0) || !(energies.inductive > 0.0) || energies.josephson < 0.0) {
    throw InvalidParameter("phase qubit energies need Ec > 0, EL > 0, EJ >= 0");
  }
  // A grid cell of slack: the minimum only has to be resolvable, not sampled.
  const double slack = grid.spacing();
  for (double phi : potential_minima(energies)) {
    if (phi < grid.phi_min - slack || phi > grid.phi_max + slack) {
      std::ostringstream msg;
      msg << "phase grid [" << grid.phi_min << ", " << grid.phi_max
          << "] is too small: potential minimum at phi = " << phi << " lies outside";
      throw DomainError(msg.str());
    }
  }
  Eigen::MatrixXd h = -4.0 * energies.charging * second_derivative_matrix(grid);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    h(k, k) += energies.potential(grid.point(i));
  }
  return HamiltonianMatrix::dense(std::move(h), {}, grid, "phase_qubit_H_GHz");
}

HamiltonianMatrix build_phase_qubit_hamiltonian(const PhaseQubitParams& params,
                                                const PhaseGrid& grid) {
  return build_phase_qubit_hamiltonian(derive_energies(params), grid);
}

HamiltonianMatrix build_flux_qubit_hamiltonian(const FluxQubitParams& params,
                                               const ChargeLattice& lattice,
                                               FluxHamiltonianTerms terms) {
  params.validate();
  lattice.validate();
  const double ep = params.ep_ej();
  const double em = params.em_ej();
  const double offset = terms.constant_offset ? 2.0 + params.alpha : 0.0;

  Triplets triplets;
  const auto sites = lattice.sites();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double np = sites[i].n_p;
    const double nm = sites[i].n_m;
    const auto k = static_cast<Eigen::Index>(i);
    triplets.emplace_back(k, k, Complex(ep * np * np + em * nm * nm + offset, 0.0));
  }
  if (terms.josephson) {
    // -2 cos(phi_p) cos(phi_m): four diagonal hops of -1/2.
    add_hopping(triplets, lattice, +1, +1, -0.5);
    add_hopping(triplets, lattice, +1, -1, -0.5);
    // -alpha cos(2 pi f + 2 phi_m)
    add_hopping(triplets, lattice, 0, +2, -0.5 * params.alpha * flux_phase(params.frustration));
  }
  return HamiltonianMatrix::sparse(assemble(lattice, triplets), lattice, "flux_qubit_H_EJ");
}

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::CosPhase: return "cos_phase";
    case OperatorKind::Phase: return "phase";
    case OperatorKind::Charge: return "charge";
    case OperatorKind::CosJ3: return "cos_j3";
    case OperatorKind::SinJ3: return "sin_j3";
    case OperatorKind::ChargeM: return "charge_m";
    case OperatorKind::CosJ1: return "cos_j1";
  }
  return "unknown";
}

bool acts_on_phase_grid(OperatorKind kind) {
  return kind == OperatorKind::CosPhase || kind == OperatorKind::Phase ||
         kind == OperatorKind::Charge;
}

HamiltonianMatrix build_operator(OperatorKind kind, const BasisSpec& basis, double frustration) {
  const std::string label(to_string(kind));
  if (acts_on_phase_grid(kind)) {
    require_grid(basis, kind);
    const auto& grid = std::get<PhaseGrid>(basis);
    grid.validate(2);
    const auto n = static_cast<Eigen::Index>(grid.n_points);
    if (kind == OperatorKind::Charge) {
      // -i D is Hermitian because D is real antisymmetric.
      return HamiltonianMatrix::dense({}, -first_derivative_matrix(grid), basis, label);
    }
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double phi = grid.point(static_cast<std::size_t>(i));
      diag(i, i) = (kind == OperatorKind::Phase) ? phi : std::cos(phi);
    }
    return HamiltonianMatrix::dense(std::move(diag), {}, basis, label);
  }

  require_lattice(basis, kind);
  const auto& lattice = std::get<ChargeLattice>(basis);
  lattice.validate(1);
  Triplets triplets;
  switch (kind) {
    case OperatorKind::ChargeM: {
      const auto sites = lattice.sites();
      for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        triplets.emplace_back(k, k, Complex(sites[i].n_m, 0.0));
      }
      break;
    }
    case OperatorKind::CosJ3:
      add_hopping(triplets, lattice, 0, +2, 0.5 * flux_phase(frustration));
      break;
    case OperatorKind::SinJ3:
      // exp(i(2 pi f + 2 phi_m)) / 2i
      add_hopping(triplets, lattice, 0, +2, flux_phase(frustration) / Complex(0.0, 2.0));
      break;
    case OperatorKind::CosJ1:
      add_hopping(triplets, lattice, +1, +1, 0.5);
      break;
    default:
      break;
  }
  return HamiltonianMatrix::sparse(assemble(lattice, triplets), lattice, label);
}

}  // namespace couplinglab

#include "couplinglab/coupling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "couplinglab/constants.hpp"
#include "couplinglab/errors.hpp"

namespace couplinglab {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool operator_belongs_to(const CouplingModel& m, OperatorKind kind) {
  return std::visit(
      overloaded{
          [&](const model::CriticalCurrent&) {
            return kind == OperatorKind::CosPhase || kind == OperatorKind::CosJ3 ||
                   kind == OperatorKind::CosJ1;
          },
          [&](const model::Dipole&) {
            return kind == OperatorKind::Charge || kind == OperatorKind::ChargeM;
          },
          [&](const model::FluxFluctuator&) {
            return kind == OperatorKind::Phase || kind == OperatorKind::SinJ3;
          },
      },
      m);
}

}  // namespace

void TLSParams::validate() const {
  if (!(delta >= 0.0) || !std::isfinite(epsilon) || !std::isfinite(delta)) {
    throw InvalidParameter("TLS needs finite epsilon and delta >= 0");
  }
  if (!(omega() > 0.0)) throw InvalidParameter("TLS needs a nonzero splitting");
}

double TLSParams::theta() const { return std::atan2(epsilon, delta); }

double TLSParams::omega() const { return std::hypot(epsilon, delta); }

std::string_view model_name(const CouplingModel& m) {
  return std::visit(overloaded{
                        [](const model::CriticalCurrent&) { return std::string_view("critical_current"); },
                        [](const model::Dipole&) { return std::string_view("dipole"); },
                        [](const model::FluxFluctuator&) { return std::string_view("flux_fluctuator"); },
                    },
                    m);
}

void validate(const CouplingModel& m) {
  std::visit(overloaded{
                 [](const model::CriticalCurrent& c) {
                   if (!std::isfinite(c.delta_i0)) throw InvalidParameter("delta I0 must be finite");
                 },
                 [](const model::Dipole& d) {
                   if (!(d.x > 0.0)) throw InvalidParameter("dipole needs junction thickness x > 0");
                   if (!(d.d >= 0.0)) throw InvalidParameter("dipole needs length d >= 0");
                   if (!std::isfinite(d.eta)) throw InvalidParameter("dipole angle must be finite");
                 },
                 [](const model::FluxFluctuator& f) {
                   if (!std::isfinite(f.delta_flux)) throw InvalidParameter("delta flux must be finite");
                 },
             },
             m);
}

CouplingFactors coupling_factors(const EigenSolution& sol, const HamiltonianMatrix& op,
                                 OperatorKind kind) {
  if (!(op.basis() == sol.basis)) {
    throw IncompatibleBasis("operator basis " + describe(op.basis()) +
                            " differs from solution basis " + describe(sol.basis));
  }
  const Eigen::VectorXcd ground = sol.qubit_ground();
  const Eigen::VectorXcd excited = sol.qubit_excited();
  const Eigen::VectorXcd op_excited = op.apply(excited);
  const Complex o01 = ground.dot(op_excited);
  const double o11 = excited.dot(op_excited).real();
  const double o00 = op.matrix_element(ground, ground).real();
  CouplingFactors f;
  f.o_x = std::abs(o01);
  f.o_z = 0.5 * std::abs(o11 - o00);
  f.operator_kind = kind;
  return f;
}

CouplingFactors coupling_factors(const EigenSolution& sol, OperatorKind kind, double frustration) {
  return coupling_factors(sol, build_operator(kind, sol.basis, frustration), kind);
}

OperatorKind phase_qubit_operator(const CouplingModel& m) {
  return std::visit(overloaded{
                        [](const model::CriticalCurrent&) { return OperatorKind::CosPhase; },
                        [](const model::Dipole&) { return OperatorKind::Charge; },
                        [](const model::FluxFluctuator&) { return OperatorKind::Phase; },
                    },
                    m);
}

OperatorKind flux_qubit_operator(const CouplingModel& m) {
  return std::visit(overloaded{
                        [](const model::CriticalCurrent&) { return OperatorKind::CosJ3; },
                        [](const model::Dipole&) { return OperatorKind::ChargeM; },
                        [](const model::FluxFluctuator&) { return OperatorKind::SinJ3; },
                    },
                    m);
}

double model_prefactor(const CouplingModel& m, const PhaseQubitParams& circuit) {
  validate(m);
  circuit.validate();
  using C = PhysicalConstants;
  return std::visit(
      overloaded{
          [](const model::CriticalCurrent& c) {
            return joules_to_ghz(-c.delta_i0 * C::reduced_flux_quantum);
          },
          [&](const model::Dipole& d) {
            return joules_to_ghz(2.0 * C::e_charge * C::e_charge * d.d / (circuit.capacitance * d.x));
          },
          [&](const model::FluxFluctuator& f) {
            // delta_flux phi0 of flux is a phase step of 2 pi delta_flux.
            const double phase_step = 2.0 * kPi * f.delta_flux;
            return joules_to_ghz(-phase_step / circuit.inductance * C::reduced_flux_quantum *
                                 C::reduced_flux_quantum);
          },
      },
      m);
}

double model_prefactor(const CouplingModel& m, const FluxQubitParams& circuit) {
  validate(m);
  circuit.validate();
  using C = PhysicalConstants;
  return std::visit(
      overloaded{
          [&](const model::CriticalCurrent& c) {
            return joules_to_ghz(-circuit.alpha * C::reduced_flux_quantum * c.delta_i0);
          },
          [](const model::Dipole&) -> double {
            throw InvalidParameter(
                "dipole on the flux qubit has no scalar prefactor; use dipole_coupling_flux");
          },
          [&](const model::FluxFluctuator& f) {
            return 2.0 * kPi * circuit.alpha * circuit.ej_ghz * f.delta_flux;
          },
      },
      m);
}

PauliCoupling pauli_coupling(const CouplingModel& m, const CouplingFactors& factors,
                             const TLSParams& tls, double prefactor) {
  tls.validate();
  if (!operator_belongs_to(m, factors.operator_kind)) {
    std::ostringstream msg;
    msg << "factors for operator " << to_string(factors.operator_kind) << " do not belong to the "
        << model_name(m) << " model";
    throw InvalidParameter(msg.str());
  }
  const double theta = tls.theta();
  PauliCoupling g;
  g.g_x = prefactor * factors.o_x * std::cos(theta);
  g.g_z = prefactor * factors.o_z * std::sin(theta);
  if (const auto* dipole = std::get_if<model::Dipole>(&m)) {
    g.g_x *= std::cos(dipole->eta);
    g.g_z = 0.0;
  }
  return g;
}

double charge_m_element(const EigenSolution& sol) {
  const HamiltonianMatrix nm = build_operator(OperatorKind::ChargeM, sol.basis);
  return std::abs(nm.matrix_element(sol.qubit_ground(), sol.qubit_excited()));
}

PauliCoupling dipole_coupling_flux(const EigenSolution& sol, const FluxQubitParams& params,
                                   const model::Dipole& dipole, const TLSParams& tls) {
  params.validate();
  validate(CouplingModel{dipole});
  tls.validate();
  if (!std::holds_alternative<ChargeLattice>(sol.basis)) {
    throw IncompatibleBasis("dipole_coupling_flux needs a flux-qubit solution");
  }
  const double voltage_energy = 2.0 * params.em_ej() * charge_m_element(sol) * params.ej_ghz;
  PauliCoupling g;
  g.g_x = (dipole.d / dipole.x) * std::cos(dipole.eta) * std::cos(tls.theta()) * voltage_energy;
  g.g_z = 0.0;
  return g;
}

double phase_m_element(const EigenSolution& sol, int grid_points) {
  const auto* lattice = std::get_if<ChargeLattice>(&sol.basis);
  if (!lattice) throw IncompatibleBasis("phase_m_element needs a charge lattice solution");
  const auto sites = lattice->sites();
  const Eigen::VectorXcd a = sol.qubit_ground();
  const Eigen::VectorXcd b = sol.qubit_excited();

  // psi(phi_p, phi_m) = sum_n c_n exp(i (n_p phi_p + n_m phi_m)) on a midpoint
  // grid over phi_p in [-pi/2, pi/2), phi_m in [-pi, pi).
  const int np_points = grid_points / 2;
  const int nm_points = grid_points;
  const double dp = kPi / np_points;
  const double dm = 2.0 * kPi / nm_points;
  Complex overlap_ab = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  std::vector<Complex> row_a(static_cast<std::size_t>(nm_points));
  std::vector<Complex> row_b(static_cast<std::size_t>(nm_points));
  for (int ip = 0; ip < np_points; ++ip) {
    const double phi_p = -0.5 * kPi + (ip + 0.5) * dp;
    std::fill(row_a.begin(), row_a.end(), Complex(0.0));
    std::fill(row_b.begin(), row_b.end(), Complex(0.0));
    for (std::size_t s = 0; s < sites.size(); ++s) {
      const Complex ca = a(static_cast<Eigen::Index>(s));
      const Complex cb = b(static_cast<Eigen::Index>(s));
      if (ca == 0.0 && cb == 0.0) continue;
      const Complex phase_p = std::polar(1.0, sites[s].n_p * phi_p);
      for (int im = 0; im < nm_points; ++im) {
        const double phi_m = -kPi + (im + 0.5) * dm;
        const Complex w = phase_p * std::polar(1.0, sites[s].n_m * phi_m);
        row_a[static_cast<std::size_t>(im)] += ca * w;
        row_b[static_cast<std::size_t>(im)] += cb * w;
      }
    }
    for (int im = 0; im < nm_points; ++im) {
      const double phi_m = -kPi + (im + 0.5) * dm;
      const Complex pa = row_a[static_cast<std::size_t>(im)];
      const Complex pb = row_b[static_cast<std::size_t>(im)];
      overlap_ab += std::conj(pa) * phi_m * pb;
      norm_a += std::norm(pa);
      norm_b += std::norm(pb);
    }
  }
  return std::abs(overlap_ab) / std::sqrt(norm_a * norm_b);
}

}  // namespace couplinglab

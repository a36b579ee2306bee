// Qubit-TLS coupling factors and interaction strengths.
//
// For a TLS coupled through circuit operator O,
//   H_I = v (O)(cos theta sT^x + sin theta sT^z)
// projects onto the qubit pair as
//   H_I = v (o_x cos theta sq^x sT^x + o_z sin theta sq^z sT^z)
// with o_x = |<0|O|1>| and o_z = |<1|O|1> - <0|O|0>| / 2. Mixed terms such as
// sq^z sT^x do not shift the composite spectrum and are not computed.
#pragma once

#include <string_view>
#include <variant>

#include "couplinglab/circuits.hpp"
#include "couplinglab/matrix.hpp"
#include "couplinglab/spectral.hpp"

namespace couplinglab {

/// TLS in its eigenbasis, energies in GHz.
struct TLSParams {
  double epsilon = 0.0;  // asymmetry energy / h
  double delta = 1.0;    // tunnelling matrix element / h

  void validate() const;
  /// atan2(epsilon, delta), in (-pi/2, pi/2] for delta >= 0.
  double theta() const;
  /// sqrt(epsilon^2 + delta^2).
  double omega() const;
};

namespace model {

/// TLS switches the junction critical current by delta_i0 (A).
struct CriticalCurrent {
  double delta_i0 = 0.0;
};

/// Charge dipole of length d (m) in a junction barrier of thickness x (m),
/// at angle eta (rad) to the field.
struct Dipole {
  double d = 0.0;
  double x = 1.0;
  double eta = 0.0;
};

/// TLS switches the loop flux by delta_flux, in units of phi0.
struct FluxFluctuator {
  double delta_flux = 0.0;
};

}  // namespace model

using CouplingModel = std::variant<model::CriticalCurrent, model::Dipole, model::FluxFluctuator>;

std::string_view model_name(const CouplingModel& m);
void validate(const CouplingModel& m);

struct CouplingFactors {
  double o_x = 0.0;
  double o_z = 0.0;
  OperatorKind operator_kind = OperatorKind::CosPhase;
};

/// Interaction strengths in GHz: g_x sq^x sT^x + g_z sq^z sT^z.
struct PauliCoupling {
  double g_x = 0.0;
  double g_z = 0.0;
};

/// Factors of operator O between the designated qubit states of sol.
/// o_x is |<0|O|1>|, which is the symmetrized |O_10 + O_01| / 2 once the
/// relative phase of the qubit states makes O_01 real.
CouplingFactors coupling_factors(const EigenSolution& sol, const HamiltonianMatrix& op,
                                 OperatorKind kind);

/// Overload that builds the operator in the solution's basis.
CouplingFactors coupling_factors(const EigenSolution& sol, OperatorKind kind, double frustration = 0.0);

/// Operator through which the model couples to each circuit.
OperatorKind phase_qubit_operator(const CouplingModel& m);
OperatorKind flux_qubit_operator(const CouplingModel& m);

/// v_k / h in GHz, with the sign of the interaction Hamiltonian.
/// Phase qubit: v_i = -dI0 phi0/2pi, v_q = 2 e^2 d/(C x), v_phi = -(2pi dPhi/L)(phi0/2pi)^2.
/// Flux qubit: v_i = -alpha phi0 dI0/2pi, v_phi = 2 pi alpha EJ dPhi.
/// The dipole on the flux qubit goes through dipole_coupling_flux instead.
double model_prefactor(const CouplingModel& m, const PhaseQubitParams& circuit);
double model_prefactor(const CouplingModel& m, const FluxQubitParams& circuit);

/// g_x = v o_x cos(theta) [cos(eta) for the dipole], g_z = v o_z sin(theta),
/// and g_z = 0 for the dipole. Throws InvalidParameter when the factors were
/// computed with an operator that does not belong to the model.
PauliCoupling pauli_coupling(const CouplingModel& m, const CouplingFactors& factors,
                             const TLSParams& tls, double prefactor);

/// Dipole in the small junction of the flux qubit:
///   g_x = (d/x) cos(eta) cos(theta) 2 Em |<0|n_m|1>|, g_z = 0,
/// using hbar omega_q <0|phi_m|1> = 2 Em <0|n_m|1> (up to a phase).
PauliCoupling dipole_coupling_flux(const EigenSolution& sol, const FluxQubitParams& params,
                                   const model::Dipole& dipole, const TLSParams& tls);

/// |<0|n_m|1>| between the designated qubit states.
double charge_m_element(const EigenSolution& sol);

/// |<0|phi_m|1>| from the phase representation of the qubit states, with
/// phi_m taken on the branch [-pi, pi) over the cell phi_p in [-pi/2, pi/2).
double phase_m_element(const EigenSolution& sol, int grid_points = 128);

}  // namespace couplinglab

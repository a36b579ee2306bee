// Hamiltonians and coupling operators of the two superconducting circuits.
//
// Phase qubit (flux-biased rf-SQUID), energies in GHz:
//   H = 4 Ec n^2 + (EL/2) (phi - 2 pi phi_e)^2 - EJ cos(phi)
// Three-junction flux qubit in (phi_p, phi_m) coordinates, energies in EJ:
//   H = Ep n_p^2 + Em n_m^2 - 2 EJ cos(phi_p) cos(phi_m)
//       - alpha EJ cos(2 pi f + 2 phi_m) + EJ (2 + alpha)
// with Ep = 2 Ec and Em = Ep / (1 + 2 alpha).
//
// Charge states follow n = -i d/dphi, so exp(i phi) raises n by one.
#pragma once

#include <string_view>
#include <vector>

#include "couplinglab/basis.hpp"
#include "couplinglab/matrix.hpp"

namespace couplinglab {

struct PhaseQubitParams {
  double capacitance = 850e-15;       // F
  double inductance = 720e-12;        // H
  double critical_current = 984e-9;   // A
  double bias = 0.58;                 // external flux in units of phi0

  /// Throws InvalidParameter unless C, L, I0 > 0 and beta > 1.
  void validate() const;
};

/// Characteristic energies of the phase qubit, all in GHz (energy / h).
struct PhaseQubitEnergies {
  double charging = 0.0;    // Ec = e^2 / 2C
  double josephson = 0.0;   // EJ = I0 phi0 / 2pi
  double inductive = 0.0;   // EL = (phi0 / 2pi)^2 / L
  double bias = 0.0;        // phi0 units

  /// Screening parameter 2 pi L I0 / phi0 = EJ / EL.
  double beta() const { return josephson / inductive; }
  /// Centre of the inductive parabola, 2 pi phi_e.
  double parabola_centre() const;
  /// U(phi) in GHz.
  double potential(double phi) const;
};

PhaseQubitEnergies derive_energies(const PhaseQubitParams& params);

struct FluxQubitParams {
  double ej_over_ec = 40.0;
  double alpha = 0.68;
  double frustration = 0.5;  // external flux in units of phi0
  /// Absolute Josephson energy EJ/h in GHz. The circuit itself is solved in
  /// EJ units; this only converts to GHz at the coupling interfaces.
  double ej_ghz = 100.0;

  /// Throws InvalidParameter unless ej_over_ec > 0, 0.5 < alpha < 1 and ej_ghz > 0.
  void validate() const;

  double charging_ej() const { return 1.0 / ej_over_ec; }
  double ep_ej() const { return 2.0 * charging_ej(); }
  double em_ej() const { return ep_ej() / (1.0 + 2.0 * alpha); }
};

/// Grid [2 pi phi_e - 2 pi, 2 pi phi_e + 2 pi].
PhaseGrid default_phase_grid(double bias, std::size_t n_points = 1024,
                             Differentiation scheme = Differentiation::Fourier);

/// Local minima of the phase-qubit potential in [centre - 2pi, centre + 2pi],
/// located to machine precision.
std::vector<double> potential_minima(const PhaseQubitEnergies& energies);
/// Local maxima of the phase-qubit potential in the same window.
std::vector<double> potential_maxima(const PhaseQubitEnergies& energies);

/// Throws DomainError if a local minimum of the potential in the window
/// [centre - 2pi, centre + 2pi] lies outside the grid.
HamiltonianMatrix build_phase_qubit_hamiltonian(const PhaseQubitEnergies& energies,
                                                const PhaseGrid& grid);
HamiltonianMatrix build_phase_qubit_hamiltonian(const PhaseQubitParams& params,
                                                const PhaseGrid& grid);

/// Switches for the individual terms of the flux-qubit Hamiltonian.
struct FluxHamiltonianTerms {
  bool josephson = true;
  bool constant_offset = true;
};

HamiltonianMatrix build_flux_qubit_hamiltonian(const FluxQubitParams& params,
                                               const ChargeLattice& lattice,
                                               FluxHamiltonianTerms terms = {});

enum class OperatorKind {
  CosPhase,  // cos(phi), phase grid
  Phase,     // phi, phase grid
  Charge,    // -i d/dphi, phase grid
  CosJ3,     // cos(2 pi f + 2 phi_m), charge lattice
  SinJ3,     // sin(2 pi f + 2 phi_m), charge lattice
  ChargeM,   // n_m, charge lattice
  CosJ1,     // cos(phi_p + phi_m), charge lattice
};

std::string_view to_string(OperatorKind kind);
bool acts_on_phase_grid(OperatorKind kind);

/// Matrix of the operator in the given basis. The frustration f is only read
/// by CosJ3 and SinJ3. Throws IncompatibleBasis on a kind/basis mismatch.
HamiltonianMatrix build_operator(OperatorKind kind, const BasisSpec& basis,
                                 double frustration = 0.0);

/// d/dphi on the grid with the grid's differentiation scheme.
Eigen::MatrixXd first_derivative_matrix(const PhaseGrid& grid);
/// d^2/dphi^2 on the grid with the grid's differentiation scheme.
Eigen::MatrixXd second_derivative_matrix(const PhaseGrid& grid);

}  // namespace couplinglab

// Composite qubit + TLS spectrum and the two-photon asymmetry.
//
//   H = (wq/2) sq^z + (wT/2) sT^z + g_x sq^x sT^x + g_z sq^z sT^z
//
// sigma^z = +1 on the excited state. Both bare Hamiltonians are traceless,
// so the four levels sum to zero. Levels are labelled 1..4 by energy.
#pragma once

#include <array>
#include <vector>

#include "couplinglab/coupling.hpp"

namespace couplinglab {

struct CompositeSpectrum {
  std::array<double, 4> energies{};  // E_1..E_4 ascending, GHz
  double omega_q = 0.0;
  double omega_t = 0.0;
  PauliCoupling coupling;
};

struct TransitionSet {
  double omega_12 = 0.0;
  double omega_13 = 0.0;
  double omega_14 = 0.0;
  /// omega_14 - omega_12 - omega_13.
  double asymmetry = 0.0;
  /// Two-photon line position omega_14 / 2 minus the one-photon midpoint.
  double two_photon_offset() const { return 0.5 * asymmetry; }
};

/// Throws InvalidParameter unless omega_q, omega_t > 0.
CompositeSpectrum composite_spectrum(double omega_q, double omega_t, const PauliCoupling& g);

TransitionSet two_photon_asymmetry(const CompositeSpectrum& s);

/// Closed-form levels from the two 2x2 blocks {|gg>,|ee>} and {|ge>,|eg>}:
///   g_z +- sqrt(((wq + wT)/2)^2 + g_x^2),  -g_z +- sqrt(((wq - wT)/2)^2 + g_x^2).
std::array<double, 4> composite_levels_closed_form(double omega_q, double omega_t,
                                                   const PauliCoupling& g);

struct ScanPoint {
  double bias = 0.0;
  double omega_q = 0.0;  // GHz
  PauliCoupling coupling;
};

struct AnticrossingRow {
  double bias = 0.0;
  double omega_q = 0.0;
  TransitionSet transitions;
};

struct AnticrossingScan {
  std::vector<AnticrossingRow> rows;
  /// False when omega_q - omega_t never changes sign over the sweep.
  bool crosses_resonance = false;
  /// Smallest omega_13 - omega_12 over the rows, and where it occurs.
  double min_gap = 0.0;
  double min_gap_bias = 0.0;
};

AnticrossingScan anticrossing_scan(const std::vector<ScanPoint>& sweep, double omega_t);

}  // namespace couplinglab

#pragma once

#include <numbers>

namespace couplinglab {

/// CODATA-2018 exact SI values.
struct PhysicalConstants {
  static constexpr double e_charge = 1.602176634e-19;  // C
  static constexpr double h_planck = 6.62607015e-34;   // J s
  static constexpr double flux_quantum = h_planck / (2.0 * e_charge);  // Wb
  /// phi0 / 2pi, the reduced flux quantum.
  static constexpr double reduced_flux_quantum = flux_quantum / (2.0 * std::numbers::pi);
};

/// Joules to GHz (energy / h).
constexpr double joules_to_ghz(double joules) {
  return joules / PhysicalConstants::h_planck * 1e-9;
}

}  // namespace couplinglab

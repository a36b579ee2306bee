#include "couplinglab/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "couplinglab/errors.hpp"

namespace couplinglab {

CompositeSpectrum composite_spectrum(double omega_q, double omega_t, const PauliCoupling& g) {
  if (!(omega_q > 0.0) || !(omega_t > 0.0)) {
    throw InvalidParameter("composite spectrum needs omega_q > 0 and omega_t > 0");
  }
  // Basis |q T> ordered gg, ge, eg, ee; sigma^z eigenvalue +1 for e.
  const double sz[2] = {-1.0, 1.0};
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  for (int q = 0; q < 2; ++q) {
    for (int t = 0; t < 2; ++t) {
      const int i = 2 * q + t;
      h(i, i) = 0.5 * omega_q * sz[q] + 0.5 * omega_t * sz[t] + g.g_z * sz[q] * sz[t];
      // sigma_x x sigma_x flips both excitations.
      h(i, 2 * (1 - q) + (1 - t)) = g.g_x;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(h, Eigen::EigenvaluesOnly);
  CompositeSpectrum s;
  for (int i = 0; i < 4; ++i) s.energies[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  s.omega_q = omega_q;
  s.omega_t = omega_t;
  s.coupling = g;
  return s;
}

TransitionSet two_photon_asymmetry(const CompositeSpectrum& s) {
  const auto& e = s.energies;
  TransitionSet t;
  t.omega_12 = e[1] - e[0];
  t.omega_13 = e[2] - e[0];
  t.omega_14 = e[3] - e[0];
  t.asymmetry = t.omega_14 - t.omega_12 - t.omega_13;
  return t;
}

std::array<double, 4> composite_levels_closed_form(double omega_q, double omega_t,
                                                   const PauliCoupling& g) {
  const double outer = std::hypot(0.5 * (omega_q + omega_t), g.g_x);
  const double inner = std::hypot(0.5 * (omega_q - omega_t), g.g_x);
  std::array<double, 4> levels{g.g_z - outer, g.g_z + outer, -g.g_z - inner, -g.g_z + inner};
  std::sort(levels.begin(), levels.end());
  return levels;
}

AnticrossingScan anticrossing_scan(const std::vector<ScanPoint>& sweep, double omega_t) {
  AnticrossingScan scan;
  scan.min_gap = std::numeric_limits<double>::infinity();
  bool below = false;
  bool above = false;
  for (const auto& point : sweep) {
    const CompositeSpectrum s = composite_spectrum(point.omega_q, omega_t, point.coupling);
    AnticrossingRow row{point.bias, point.omega_q, two_photon_asymmetry(s)};
    const double gap = row.transitions.omega_13 - row.transitions.omega_12;
    if (gap < scan.min_gap) {
      scan.min_gap = gap;
      scan.min_gap_bias = point.bias;
    }
    below = below || point.omega_q <= omega_t;
    above = above || point.omega_q >= omega_t;
    scan.rows.push_back(row);
  }
  scan.crosses_resonance = below && above;
  if (sweep.empty()) scan.min_gap = 0.0;
  return scan;
}

}  // namespace couplinglab

// Discretizations used to represent circuit Hamiltonians.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace couplinglab {

/// How the phase-grid momentum operator is discretized.
enum class Differentiation {
  Fourier,            // periodic spectral collocation
  CentralDifference,  // second-order stencil, Dirichlet ends
};

/// Uniform grid of phase values, endpoints included.
struct PhaseGrid {
  double phi_min = 0.0;
  double phi_max = 0.0;
  std::size_t n_points = 0;
  Differentiation differentiation = Differentiation::Fourier;

  double spacing() const { return (phi_max - phi_min) / static_cast<double>(n_points - 1); }
  double point(std::size_t i) const { return phi_min + spacing() * static_cast<double>(i); }
  std::vector<double> points() const;

  /// Throws InvalidParameter unless phi_max > phi_min and n_points >= min_points.
  void validate(std::size_t min_points = kMinPoints) const;

  static constexpr std::size_t kMinPoints = 64;
  bool operator==(const PhaseGrid&) const = default;
};

/// Which (n_p, n_m) sites of the charge lattice are kept.
///
/// The Josephson terms only change n_p + n_m by an even amount, so the full
/// tensor lattice splits into two decoupled blocks. Only the even block is
/// 2pi-periodic in the junction phases phi_1 = phi_p + phi_m and
/// phi_2 = phi_p - phi_m; the odd block is a nearly degenerate copy of it.
enum class LatticeSector {
  Physical,  // n_p + n_m even
  Full,      // every site of the tensor product
};

struct ChargeSite {
  int n_p = 0;
  int n_m = 0;
  bool operator==(const ChargeSite&) const = default;
};

/// Integer Cooper-pair lattice for the (phi_p, phi_m) coordinates of the
/// three-junction flux qubit, |n_p| <= n_p_cutoff and |n_m| <= n_m_cutoff.
struct ChargeLattice {
  int n_p_cutoff = 16;
  int n_m_cutoff = 16;
  LatticeSector sector = LatticeSector::Physical;

  /// Sites in storage order: n_p major, n_m minor, both ascending.
  std::vector<ChargeSite> sites() const;
  std::size_t dim() const;
  /// Storage index of a site, or nullopt when it is outside the lattice.
  std::optional<std::size_t> index_of(int n_p, int n_m) const;

  void validate(int min_cutoff = kMinCutoff) const;

  static constexpr int kMinCutoff = 4;
  bool operator==(const ChargeLattice&) const = default;
};

using BasisSpec = std::variant<PhaseGrid, ChargeLattice>;

std::size_t basis_dim(const BasisSpec& basis);
std::string describe(const BasisSpec& basis);

}  // namespace couplinglab

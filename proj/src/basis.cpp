#include "couplinglab/basis.hpp"

#include <cstdlib>
#include <sstream>

#include "couplinglab/errors.hpp"

namespace couplinglab {

namespace {

bool kept(const ChargeLattice& lattice, int n_p, int n_m) {
  return lattice.sector == LatticeSector::Full || (n_p + n_m) % 2 == 0;
}

// Number of kept n_m values in a row with the given n_p.
std::size_t row_size(const ChargeLattice& lattice, int n_p) {
  const int span = 2 * lattice.n_m_cutoff + 1;
  if (lattice.sector == LatticeSector::Full) return static_cast<std::size_t>(span);
  // n_m runs over -N..N; values with n_m = n_p (mod 2).
  const bool even_row = (n_p % 2 == 0);
  const bool cutoff_even = (lattice.n_m_cutoff % 2 == 0);
  const int evens = cutoff_even ? lattice.n_m_cutoff + 1 : lattice.n_m_cutoff;
  return static_cast<std::size_t>(even_row ? evens : span - evens);
}

}  // namespace

std::vector<double> PhaseGrid::points() const {
  std::vector<double> out(n_points);
  for (std::size_t i = 0; i < n_points; ++i) out[i] = point(i);
  return out;
}

void PhaseGrid::validate(std::size_t min_points) const {
  if (!(phi_max > phi_min)) {
    throw InvalidParameter("phase grid needs phi_max > phi_min");
  }
  if (n_points < min_points || n_points < 2) {
    std::ostringstream msg;
    msg << "phase grid needs at least " << min_points << " points, got " << n_points;
    throw InvalidParameter(msg.str());
  }
}

std::vector<ChargeSite> ChargeLattice::sites() const {
  std::vector<ChargeSite> out;
  out.reserve(dim());
  for (int p = -n_p_cutoff; p <= n_p_cutoff; ++p) {
    for (int m = -n_m_cutoff; m <= n_m_cutoff; ++m) {
      if (kept(*this, p, m)) out.push_back({p, m});
    }
  }
  return out;
}

std::size_t ChargeLattice::dim() const {
  std::size_t total = 0;
  for (int p = -n_p_cutoff; p <= n_p_cutoff; ++p) total += row_size(*this, p);
  return total;
}

std::optional<std::size_t> ChargeLattice::index_of(int n_p, int n_m) const {
  if (std::abs(n_p) > n_p_cutoff || std::abs(n_m) > n_m_cutoff || !kept(*this, n_p, n_m)) {
    return std::nullopt;
  }
  std::size_t offset = 0;
  for (int p = -n_p_cutoff; p < n_p; ++p) offset += row_size(*this, p);
  if (sector == LatticeSector::Full) {
    return offset + static_cast<std::size_t>(n_m + n_m_cutoff);
  }
  // First kept n_m in this row has the parity of n_p.
  int first = -n_m_cutoff;
  if ((n_p + first) % 2 != 0) ++first;
  return offset + static_cast<std::size_t>((n_m - first) / 2);
}

void ChargeLattice::validate(int min_cutoff) const {
  if (n_p_cutoff < min_cutoff || n_m_cutoff < min_cutoff) {
    std::ostringstream msg;
    msg << "charge cutoffs must be >= " << min_cutoff << ", got (" << n_p_cutoff << ", "
        << n_m_cutoff << ")";
    throw InvalidParameter(msg.str());
  }
}

std::size_t basis_dim(const BasisSpec& basis) {
  if (const auto* grid = std::get_if<PhaseGrid>(&basis)) return grid->n_points;
  return std::get<ChargeLattice>(basis).dim();
}

std::string describe(const BasisSpec& basis) {
  std::ostringstream out;
  if (const auto* grid = std::get_if<PhaseGrid>(&basis)) {
    out << "phase_grid[" << grid->phi_min << "," << grid->phi_max << "]x" << grid->n_points
        << (grid->differentiation == Differentiation::Fourier ? "/fourier" : "/central");
  } else {
    const auto& lattice = std::get<ChargeLattice>(basis);
    out << "charge_lattice(" << lattice.n_p_cutoff << "," << lattice.n_m_cutoff << ")"
        << (lattice.sector == LatticeSector::Physical ? "/physical" : "/full");
  }
  return out.str();
}

}  // namespace couplinglab

#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "core/angles.hpp"

namespace cornercount {

struct Site {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

// Nearest-neighbor bond; endpoints in canonical order (smaller x, then
// smaller y, first).
struct Bond {
  Site a;
  Site b;
  friend bool operator==(const Bond&, const Bond&) = default;
  friend auto operator<=>(const Bond&, const Bond&) = default;
};

inline Bond make_bond(Site p, Site q) { return (q < p) ? Bond{q, p} : Bond{p, q}; }

// Wedge-shaped bipartition of the unit square lattice (spacing 1).  The apex
// sits at (apex_u, apex_v) inside the unit cell [0,1)^2; the system is the
// set of lattice sites within `radius` of the apex, and subsystem A is the
// wedge of opening `theta` whose first edge points along `phi`.  theta is
// accepted on [0, 2*pi] so a wedge and its complement share one predicate.
struct SectorConfig {
  double apex_u = 0.5;
  double apex_v = 0.5;
  double phi = 0.0;
  double theta = kPi;
  double radius = 4.0;
};

// Throws Errc::invalid_argument when a field is non-finite or out of range.
void validate(const SectorConfig& config);

// True iff `site` lies within the system radius (inclusive) and its angle
// relative to the apex falls in the half-open interval [phi, phi + theta).
bool site_in_sector(const SectorConfig& config, Site site);

// The angular half of the predicate alone (radius ignored); used by the
// apex-cell indicators.
bool site_in_wedge(double theta, double phi, double apex_u, double apex_v, Site site);

// All system sites in row-major order (y ascending, then x ascending).
std::vector<Site> enumerate_system_sites(const SectorConfig& config);

}  // namespace cornercount

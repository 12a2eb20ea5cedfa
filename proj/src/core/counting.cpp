#include "core/counting.hpp"

#include <algorithm>
#include <cmath>

namespace cornercount {
namespace {

// Dense membership raster over the system's bounding box.
// 0 = outside the system, 1 = in B, 2 = in A.
struct SystemGrid {
  std::int64_t x0 = 0, y0 = 0;
  std::int64_t w = 0, h = 0;
  std::vector<std::uint8_t> cell;

  std::uint8_t at(std::int64_t x, std::int64_t y) const {
    const std::int64_t ix = x - x0, iy = y - y0;
    if (ix < 0 || iy < 0 || ix >= w || iy >= h) return 0;
    return cell[static_cast<std::size_t>(iy * w + ix)];
  }
};

SystemGrid build_grid(const SectorConfig& c, const std::vector<Site>& sites) {
  SystemGrid g;
  if (sites.empty()) return g;
  std::int64_t xmin = sites.front().x, xmax = sites.front().x;
  for (const Site& s : sites) {
    xmin = std::min(xmin, s.x);
    xmax = std::max(xmax, s.x);
  }
  g.x0 = xmin;
  g.y0 = sites.front().y;  // row-major enumeration starts at the lowest row
  g.w = xmax - xmin + 1;
  g.h = sites.back().y - g.y0 + 1;
  g.cell.assign(static_cast<std::size_t>(g.w * g.h), 0);
  for (const Site& s : sites) {
    const double dx = static_cast<double>(s.x) - c.apex_u;
    const double dy = static_cast<double>(s.y) - c.apex_v;
    const bool in_a = relative_angle(dx, dy, c.phi) < c.theta;
    g.cell[static_cast<std::size_t>((s.y - g.y0) * g.w + (s.x - g.x0))] = in_a ? 2 : 1;
  }
  return g;
}

}  // namespace

int plaquette_turns(bool ll, bool lr, bool ul, bool ur) {
  const int na = int(ll) + int(lr) + int(ul) + int(ur);
  if (na == 0 || na == 4) return 0;
  if (na == 1 || na == 3) return 1;
  // Two-vs-two: the diagonal pairs {ll,ur} / {lr,ul} bend the cut twice;
  // adjacent pairs let it run straight through.
  return (ll == ur) ? 2 : 0;
}

BipartitionResult analyze_bipartition(const SectorConfig& c) {
  const std::vector<Site> sites = enumerate_system_sites(c);
  const SystemGrid g = build_grid(c, sites);

  BipartitionResult out;
  out.split.a_sites.reserve(sites.size() / 2);
  out.split.b_sites.reserve(sites.size() / 2);
  for (const Site& s : sites) {
    (g.at(s.x, s.y) == 2 ? out.split.a_sites : out.split.b_sites).push_back(s);
  }

  for (const Site& s : sites) {
    const std::uint8_t here = g.at(s.x, s.y);
    const std::uint8_t right = g.at(s.x + 1, s.y);
    const std::uint8_t up = g.at(s.x, s.y + 1);
    if (right != 0 && right != here) out.cut.bonds.push_back(make_bond(s, Site{s.x + 1, s.y}));
    if (up != 0 && up != here) out.cut.bonds.push_back(make_bond(s, Site{s.x, s.y + 1}));
  }
  std::sort(out.cut.bonds.begin(), out.cut.bonds.end());
  out.cut.n_legs = static_cast<std::int64_t>(out.cut.bonds.size());

  // Plaquettes are anchored at their lower-left site; only plaquettes whose
  // four corners are all system sites participate.
  for (const Site& s : sites) {
    const std::uint8_t ll = g.at(s.x, s.y);
    const std::uint8_t lr = g.at(s.x + 1, s.y);
    const std::uint8_t ul = g.at(s.x, s.y + 1);
    const std::uint8_t ur = g.at(s.x + 1, s.y + 1);
    if (lr == 0 || ul == 0 || ur == 0) continue;
    const int turns = plaquette_turns(ll == 2, lr == 2, ul == 2, ur == 2);
    if (turns > 0) {
      out.corners.n_corners += turns;
      out.corners.plaquettes.push_back(s);
    }
  }
  std::sort(out.corners.plaquettes.begin(), out.corners.plaquettes.end());
  return out;
}

SiteClassification classify_sites(const SectorConfig& c) {
  return analyze_bipartition(c).split;
}

CutBonds count_cut_bonds(const SectorConfig& c) { return analyze_bipartition(c).cut; }

CornerTurns count_corner_turns(const SectorConfig& c) { return analyze_bipartition(c).corners; }

bool nearest_cell_skip_indicator(double theta, double phi, double apex_u, double apex_v) {
  for (const Site& s : {Site{0, 0}, Site{1, 0}, Site{0, 1}, Site{1, 1}}) {
    if (site_in_wedge(theta, phi, apex_u, apex_v, s)) return false;
  }
  return true;
}

int nearest_cell_corner_indicator(double theta, double phi, double apex_u, double apex_v) {
  const bool ll = site_in_wedge(theta, phi, apex_u, apex_v, Site{0, 0});
  const bool lr = site_in_wedge(theta, phi, apex_u, apex_v, Site{1, 0});
  const bool ul = site_in_wedge(theta, phi, apex_u, apex_v, Site{0, 1});
  const bool ur = site_in_wedge(theta, phi, apex_u, apex_v, Site{1, 1});
  return plaquette_turns(ll, lr, ul, ur);
}

}  // namespace cornercount

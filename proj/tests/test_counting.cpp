#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "core/counting.hpp"
#include "core/error.hpp"
#include "doctest.h"

using namespace cornercount;

namespace {

// Test-local reimplementation of the bipartition tallies, structured around
// explicit site sets and pair scans rather than the library's single pass.
struct BruteResult {
  std::int64_t legs = 0;
  std::int64_t corners = 0;
  std::int64_t a_count = 0;
  std::int64_t b_count = 0;
};

BruteResult brute_force(const SectorConfig& c) {
  std::map<Site, bool> in_a;  // all system sites -> membership
  for (std::int64_t y = -64; y <= 64; ++y)
    for (std::int64_t x = -64; x <= 64; ++x) {
      const double dx = static_cast<double>(x) - c.apex_u;
      const double dy = static_cast<double>(y) - c.apex_v;
      if (dx * dx + dy * dy > c.radius * c.radius) continue;
      double ang = std::fmod(std::atan2(dy, dx) - c.phi, 2.0 * kPi);
      if (ang < 0.0) ang += 2.0 * kPi;
      if (ang >= 2.0 * kPi) ang = 0.0;
      in_a[Site{x, y}] = ang < c.theta;
    }

  BruteResult out;
  for (const auto& [site, a] : in_a) (a ? out.a_count : out.b_count) += 1;

  // Cut bonds: enumerate right- and up-neighbors of every system site.
  for (const auto& [site, a] : in_a)
    for (const Site nb : {Site{site.x + 1, site.y}, Site{site.x, site.y + 1}}) {
      const auto it = in_a.find(nb);
      if (it != in_a.end() && it->second != a) out.legs += 1;
    }

  // Corner turns per fully-in-system plaquette, from the A-pattern.
  for (const auto& [site, a] : in_a) {
    const auto lr = in_a.find(Site{site.x + 1, site.y});
    const auto ul = in_a.find(Site{site.x, site.y + 1});
    const auto ur = in_a.find(Site{site.x + 1, site.y + 1});
    if (lr == in_a.end() || ul == in_a.end() || ur == in_a.end()) continue;
    const int count = (a ? 1 : 0) + (lr->second ? 1 : 0) + (ul->second ? 1 : 0) +
                      (ur->second ? 1 : 0);
    if (count == 1 || count == 3)
      out.corners += 1;
    else if (count == 2 && a == ur->second)
      out.corners += 2;  // diagonal pattern bends the cut twice
  }
  return out;
}

SectorConfig make(double theta, double phi, double u, double v, double r) {
  SectorConfig c;
  c.theta = theta;
  c.phi = phi;
  c.apex_u = u;
  c.apex_v = v;
  c.radius = r;
  return c;
}

}  // namespace

TEST_CASE("plaquette_turns covers all 16 site patterns") {
  // uniform
  CHECK(plaquette_turns(false, false, false, false) == 0);
  CHECK(plaquette_turns(true, true, true, true) == 0);
  // one against three: one turn
  CHECK(plaquette_turns(true, false, false, false) == 1);
  CHECK(plaquette_turns(false, true, false, false) == 1);
  CHECK(plaquette_turns(false, false, true, false) == 1);
  CHECK(plaquette_turns(false, false, false, true) == 1);
  CHECK(plaquette_turns(false, true, true, true) == 1);
  CHECK(plaquette_turns(true, false, true, true) == 1);
  CHECK(plaquette_turns(true, true, false, true) == 1);
  CHECK(plaquette_turns(true, true, true, false) == 1);
  // two against two, adjacent: straight cut, no turn
  CHECK(plaquette_turns(true, true, false, false) == 0);
  CHECK(plaquette_turns(false, false, true, true) == 0);
  CHECK(plaquette_turns(true, false, true, false) == 0);
  CHECK(plaquette_turns(false, true, false, true) == 0);
  // two against two, diagonal: the cut bends twice
  CHECK(plaquette_turns(true, false, false, true) == 2);
  CHECK(plaquette_turns(false, true, true, false) == 2);
}

TEST_CASE("hand-derived goldens") {
  // Half plane through the cell center: the cut runs straight between the
  // columns of the r=2 disc, severing 4 bonds with no turns.
  const BipartitionResult straight = analyze_bipartition(make(kPi, 0.0, 0.5, 0.5, 2.0));
  CHECK(straight.cut.n_legs == 4);
  CHECK(straight.corners.n_corners == 0);
  CHECK(straight.split.a_sites.size() == 6);
  CHECK(straight.split.b_sites.size() == 6);

  // Quarter wedge: 4 cut bonds and a single 90-degree turn at the apex.
  const BipartitionResult quarter = analyze_bipartition(make(kPi / 2, 0.0, 0.5, 0.5, 2.0));
  CHECK(quarter.cut.n_legs == 4);
  CHECK(quarter.corners.n_corners == 1);
  CHECK(quarter.split.a_sites.size() == 3);

  // Empty and full wedges cut nothing.
  CHECK(analyze_bipartition(make(0.0, 0.3, 0.2, 0.6, 3.0)).cut.n_legs == 0);
  CHECK(analyze_bipartition(make(kTwoPi, 0.3, 0.2, 0.6, 3.0)).cut.n_legs == 0);
  CHECK(analyze_bipartition(make(kTwoPi, 0.3, 0.2, 0.6, 3.0)).corners.n_corners == 0);
}

TEST_CASE("library counts match the brute-force oracle") {
  for (const double theta : {0.3, 1.2, 2.0, kPi, 4.5})
    for (const double phi : {0.0, 0.37, 1.1, 3.9})
      for (const double r : {2.5, 4.0}) {
        for (const auto& [u, v] : std::vector<std::pair<double, double>>{
                 {0.05, 0.45}, {0.5, 0.5}, {0.93, 0.21}}) {
          const SectorConfig c = make(theta, phi, u, v, r);
          const BipartitionResult got = analyze_bipartition(c);
          const BruteResult want = brute_force(c);
          CAPTURE(theta);
          CAPTURE(phi);
          CAPTURE(u);
          CAPTURE(v);
          CAPTURE(r);
          CHECK(got.cut.n_legs == want.legs);
          CHECK(got.corners.n_corners == want.corners);
          CHECK(static_cast<std::int64_t>(got.split.a_sites.size()) == want.a_count);
          CHECK(static_cast<std::int64_t>(got.split.b_sites.size()) == want.b_count);
        }
      }
}

TEST_CASE("bipartition pieces agree with each other") {
  const SectorConfig c = make(1.9, 0.7, 0.35, 0.8, 4.0);
  const BipartitionResult all = analyze_bipartition(c);
  CHECK(count_cut_bonds(c).n_legs == all.cut.n_legs);
  CHECK(count_corner_turns(c).n_corners == all.corners.n_corners);
  const SiteClassification split = classify_sites(c);
  CHECK(split.a_sites == all.split.a_sites);
  CHECK(split.b_sites == all.split.b_sites);

  CHECK(static_cast<std::int64_t>(all.cut.bonds.size()) == all.cut.n_legs);
  CHECK(std::is_sorted(all.cut.bonds.begin(), all.cut.bonds.end()));
  for (const Bond& b : all.cut.bonds) {
    CHECK(site_in_sector(c, b.a) != site_in_sector(c, b.b));
    CHECK(std::abs(b.a.x - b.b.x) + std::abs(b.a.y - b.b.y) == 1);
  }

  // Turning-plaquette anchors re-derive the total turn count.
  CHECK(std::is_sorted(all.corners.plaquettes.begin(), all.corners.plaquettes.end()));
  std::int64_t turns = 0;
  for (const Site& p : all.corners.plaquettes) {
    const int t = plaquette_turns(
        site_in_sector(c, p), site_in_sector(c, Site{p.x + 1, p.y}),
        site_in_sector(c, Site{p.x, p.y + 1}), site_in_sector(c, Site{p.x + 1, p.y + 1}));
    CHECK(t > 0);
    turns += t;
  }
  CHECK(turns == all.corners.n_corners);
}

TEST_CASE("apex-cell indicators") {
  // theta = pi never skips: a half plane through the apex's cell always
  // captures at least one of the four cell sites.
  for (const double phi : {0.0, 0.5, 1.7, 2.9, 4.4, 6.0})
    for (const double u : {0.05, 0.5, 0.95})
      for (const double v : {0.15, 0.85}) CHECK(!nearest_cell_skip_indicator(kPi, phi, u, v));

  // A narrow wedge aimed between the cell sites skips them all.
  CHECK(nearest_cell_skip_indicator(0.1, 0.3, 0.5, 0.5));
  // A quarter wedge from the cell center picks up exactly one site: one turn.
  CHECK(nearest_cell_corner_indicator(kPi / 2, 0.0, 0.5, 0.5) == 1);
  // Full wedge: uniform pattern, no turn, no skip.
  CHECK(nearest_cell_corner_indicator(kTwoPi, 0.0, 0.5, 0.5) == 0);
  CHECK(!nearest_cell_skip_indicator(kTwoPi, 0.0, 0.5, 0.5));

  // Indicators agree with their definition on the cell's four sites.
  for (const double theta : {0.4, 1.3, 2.8})
    for (const double phi : {0.2, 1.9, 5.1}) {
      const double u = 0.31, v = 0.64;
      bool any = false;
      for (const Site s : {Site{0, 0}, Site{1, 0}, Site{0, 1}, Site{1, 1}})
        any = any || site_in_wedge(theta, phi, u, v, s);
      CHECK(nearest_cell_skip_indicator(theta, phi, u, v) == !any);
      const int turns = plaquette_turns(
          site_in_wedge(theta, phi, u, v, Site{0, 0}), site_in_wedge(theta, phi, u, v, Site{1, 0}),
          site_in_wedge(theta, phi, u, v, Site{0, 1}),
          site_in_wedge(theta, phi, u, v, Site{1, 1}));
      CHECK(nearest_cell_corner_indicator(theta, phi, u, v) == turns);
    }
}

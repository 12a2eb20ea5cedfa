#pragma once

#include <cstdint>
#include <vector>

#include "core/sector.hpp"

namespace cornercount {

struct SiteClassification {
  std::vector<Site> a_sites;  // row-major
  std::vector<Site> b_sites;  // row-major
};

struct CutBonds {
  std::int64_t n_legs = 0;
  std::vector<Bond> bonds;  // canonical endpoints, sorted
};

struct CornerTurns {
  std::int64_t n_corners = 0;          // total turns; a diagonal plaquette adds 2
  std::vector<Site> plaquettes;        // lower-left anchors of turning plaquettes, sorted
};

// Everything from one pass: the A/B split plus both boundary tallies.
//  - n_legs: bonds internal to the system with one endpoint in A, one in B
//    (the outer arc is the system edge, not part of the A/B cut);
//  - n_corners: 90-degree turns of the cut, counted per unit plaquette whose
//    four sites all belong to the system.
struct BipartitionResult {
  SiteClassification split;
  CutBonds cut;
  CornerTurns corners;
};

SiteClassification classify_sites(const SectorConfig& config);
CutBonds count_cut_bonds(const SectorConfig& config);
CornerTurns count_corner_turns(const SectorConfig& config);
BipartitionResult analyze_bipartition(const SectorConfig& config);

// Turns contributed by one plaquette given which of its sites (lower-left,
// lower-right, upper-left, upper-right) lie in A: uniform -> 0,
// one-vs-three -> 1, adjacent two-vs-two -> 0 (the cut runs straight),
// diagonal two-vs-two -> 2 (the cut bends twice).
int plaquette_turns(bool ll, bool lr, bool ul, bool ur);

// Apex-cell indicators with the radius constraint dropped: the wedge events
// local to the apex's unit cell that drive the corner term as theta -> pi.
// The cell sites are {(0,0),(1,0),(0,1),(1,1)} with the apex at (u, v).
bool nearest_cell_skip_indicator(double theta, double phi, double apex_u, double apex_v);
int nearest_cell_corner_indicator(double theta, double phi, double apex_u, double apex_v);

}  // namespace cornercount

#pragma once

#include <cstdint>
#include <vector>

#include "core/sector.hpp"

namespace cornercount {

// Orientation- and apex-averaged boundary counts.  phi is sampled on the
// uniform grid {2*pi*k/phi_steps}, the apex on the half-step grid
// {(i+0.5)/apex_steps}^2, so samples never sit on lattice ties.
struct SweepSpec {
  std::vector<double> theta_grid;  // values in [0, pi]
  std::vector<double> r_list;      // positive radii
  int phi_steps = 100;
  int apex_steps = 10;
  // Exploit the lattice's C4 symmetry: sample phi over [0, pi/2) only and
  // weight each sample by 4.  Requires phi_steps divisible by 4 and leaves
  // every total unchanged when the apex grid is 90-degree symmetric (the
  // half-step grid always is).
  bool phi_quarter_turn_only = false;
  int threads = 1;  // 0 = hardware concurrency
  // Capacity guard: refuse up front when the estimated number of elementary
  // operations exceeds this budget.
  std::int64_t max_work_units = 2'000'000'000'000;
};

struct SweepCell {
  double r = 0.0;
  double theta = 0.0;
  std::int64_t total_legs = 0;  // exact integer sums over all samples
  std::int64_t total_legs_sq = 0;
  std::int64_t total_corners = 0;
  std::int64_t total_corners_sq = 0;
  std::int64_t sample_count = 0;
  double mean_legs = 0.0;
  double mean_corners = 0.0;
  double se_legs = 0.0;  // standard error of the mean
  double se_corners = 0.0;
};

struct SweepResult {
  std::vector<double> theta_grid;  // ascending
  std::vector<double> r_list;      // as given
  std::vector<SweepCell> cells;    // r-major: cells[ri * theta_grid.size() + ti]

  const SweepCell& cell(std::size_t ri, std::size_t ti) const {
    return cells[ri * theta_grid.size() + ti];
  }
};

SweepResult run_sweep(const SweepSpec& spec);

// Frequency of the apex-cell skip event (no cell site picked up by the
// wedge) over the same phi/apex grids; exact counts over the sample count.
double estimate_skip_probability(double theta, int phi_steps, int apex_steps);

// Average apex-cell turn count (each sample contributes 0, 1 or 2).
double estimate_corner_rate(double theta, int phi_steps, int apex_steps);

}  // namespace cornercount

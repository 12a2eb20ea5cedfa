#include "core/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "core/counting.hpp"

namespace cornercount {
namespace {

constexpr double kOutside = std::numeric_limits<double>::infinity();

void validate_grids(int phi_steps, int apex_steps) {
  if (phi_steps < 1) fail(Errc::invalid_argument, "phi_steps must be >= 1");
  if (apex_steps < 1) fail(Errc::invalid_argument, "apex_steps must be >= 1");
}

void validate_spec(const SweepSpec& spec) {
  validate_grids(spec.phi_steps, spec.apex_steps);
  if (spec.theta_grid.empty()) fail(Errc::invalid_argument, "theta_grid must not be empty");
  for (double t : spec.theta_grid) {
    if (!std::isfinite(t) || t < 0.0 || t > kPi)
      fail(Errc::invalid_argument, "theta_grid values must lie in [0, pi]");
  }
  if (spec.r_list.empty()) fail(Errc::invalid_argument, "r_list must not be empty");
  for (double r : spec.r_list) {
    if (!std::isfinite(r) || r <= 1.0) fail(Errc::invalid_argument, "radii must exceed 1");
  }
  if (spec.phi_quarter_turn_only && spec.phi_steps % 4 != 0)
    fail(Errc::invalid_argument, "phi_quarter_turn_only requires phi_steps divisible by 4");
  if (spec.threads < 0) fail(Errc::invalid_argument, "threads must be >= 0");
}

// Estimated elementary operations; checked against the budget before any
// work starts so absurd grids fail fast.
std::int64_t estimate_work(const SweepSpec& spec) {
  const double samples = static_cast<double>(spec.phi_steps) * spec.apex_steps * spec.apex_steps;
  double units = 0.0;
  for (double r : spec.r_list) {
    const double span = 2.0 * std::ceil(r) + 3.0;
    units += samples * (10.0 * span * span + 4.0 * static_cast<double>(spec.theta_grid.size()));
  }
  if (units > 9.0e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(units);
}

// Raw integer tallies for one (r, theta) cell.
struct Tally {
  std::int64_t legs = 0, legs_sq = 0, corners = 0, corners_sq = 0;

  Tally& operator+=(const Tally& o) {
    legs += o.legs;
    legs_sq += o.legs_sq;
    corners += o.corners;
    corners_sq += o.corners_sq;
    return *this;
  }
};

// Scratch buffers for one radius, reused across samples by one thread.
struct Scratch {
  std::int64_t x0 = 0, y0 = 0, span = 0;
  std::vector<double> psi;              // relative angle per raster slot; inf outside the disc
  std::vector<std::int32_t> leg_delta;  // per-theta-bin deltas (one extra overflow bin)
  std::vector<std::int32_t> corner_delta;

  explicit Scratch(double r, std::size_t theta_count) {
    const auto c = static_cast<std::int64_t>(std::ceil(r));
    x0 = -c - 1;
    y0 = -c - 1;
    span = 2 * c + 3;
    psi.assign(static_cast<std::size_t>(span * span), kOutside);
    leg_delta.assign(theta_count + 1, 0);
    corner_delta.assign(theta_count + 1, 0);
  }
};

// First index in the ascending grid whose theta exceeds psi; sites/bonds
// become active at that bin (membership is psi < theta).
std::size_t bin_of(const std::vector<double>& grid, double psi) {
  return static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), psi) - grid.begin());
}

// Counts for every theta in one (r, phi, apex) sample, accumulated into
// `cells` (theta-major slice for one radius).  The per-site angles are
// computed once; bonds and plaquettes contribute step events at the theta
// thresholds where their A/B pattern changes.
void accumulate_sample(const std::vector<double>& thetas, double r, double phi, double u, double v,
                       int weight, Scratch& sc, std::vector<Tally>& cells) {
  const std::size_t tcount = thetas.size();
  const double r2 = r * r;
  std::fill(sc.psi.begin(), sc.psi.end(), kOutside);

  const auto idx = [&](std::int64_t x, std::int64_t y) {
    return static_cast<std::size_t>((y - sc.y0) * sc.span + (x - sc.x0));
  };

  for (std::int64_t y = sc.y0; y < sc.y0 + sc.span; ++y) {
    const double dy = static_cast<double>(y) - v;
    const double slack = r2 - dy * dy;
    if (slack < 0.0) continue;
    const double w = std::sqrt(slack);
    const std::int64_t xlo = std::max(sc.x0, static_cast<std::int64_t>(std::ceil(u - w)) - 1);
    const std::int64_t xhi =
        std::min(sc.x0 + sc.span - 1, static_cast<std::int64_t>(std::floor(u + w)) + 1);
    for (std::int64_t x = xlo; x <= xhi; ++x) {
      const double dx = static_cast<double>(x) - u;
      if (dx * dx + dy * dy <= r2) sc.psi[idx(x, y)] = relative_angle(dx, dy, phi);
    }
  }

  // Bond events: a bond is cut while min(psi) < theta <= max(psi).
  for (std::int64_t y = sc.y0; y < sc.y0 + sc.span; ++y) {
    for (std::int64_t x = sc.x0; x < sc.x0 + sc.span; ++x) {
      const double here = sc.psi[idx(x, y)];
      if (here == kOutside) continue;
      if (x + 1 < sc.x0 + sc.span) {
        const double right = sc.psi[idx(x + 1, y)];
        if (right != kOutside) {
          const std::size_t blo = bin_of(thetas, std::min(here, right));
          if (blo < tcount) {
            sc.leg_delta[blo] += 1;
            const std::size_t bhi = bin_of(thetas, std::max(here, right));
            if (bhi < tcount) sc.leg_delta[bhi] -= 1;
          }
        }
      }
      if (y + 1 < sc.y0 + sc.span) {
        const double up = sc.psi[idx(x, y + 1)];
        if (up != kOutside) {
          const std::size_t blo = bin_of(thetas, std::min(here, up));
          if (blo < tcount) {
            sc.leg_delta[blo] += 1;
            const std::size_t bhi = bin_of(thetas, std::max(here, up));
            if (bhi < tcount) sc.leg_delta[bhi] -= 1;
          }
        }
      }
    }
  }

  // Plaquette events.  With the corner angles sorted ascending, raising theta
  // walks the A-count k through 0..4; turns are 0,1,c2,1,0 with c2 = 2 when
  // the first two sites to enter A are a diagonal pair, else 0.
  for (std::int64_t y = sc.y0; y + 1 < sc.y0 + sc.span; ++y) {
    for (std::int64_t x = sc.x0; x + 1 < sc.x0 + sc.span; ++x) {
      double ps[4] = {sc.psi[idx(x, y)], sc.psi[idx(x + 1, y)], sc.psi[idx(x, y + 1)],
                      sc.psi[idx(x + 1, y + 1)]};
      if (ps[0] == kOutside || ps[1] == kOutside || ps[2] == kOutside || ps[3] == kOutside)
        continue;
      int ord[4] = {0, 1, 2, 3};
      std::sort(ord, ord + 4, [&](int a, int b) { return ps[a] < ps[b]; });
      // Corner ids: 0 = ll, 1 = lr, 2 = ul, 3 = ur; diagonal pairs sum to 3.
      const int c2 = (ord[0] + ord[1] == 3) ? 2 : 0;
      const int turns_by_k[5] = {0, 1, c2, 1, 0};
      for (int k = 0; k < 4; ++k) {
        const std::size_t b = bin_of(thetas, ps[ord[k]]);
        if (b < tcount) sc.corner_delta[b] += turns_by_k[k + 1] - turns_by_k[k];
      }
    }
  }

  std::int64_t legs = 0, corners = 0;
  for (std::size_t t = 0; t < tcount; ++t) {
    legs += sc.leg_delta[t];
    corners += sc.corner_delta[t];
    sc.leg_delta[t] = 0;
    sc.corner_delta[t] = 0;
    Tally& cell = cells[t];
    cell.legs += weight * legs;
    cell.legs_sq += weight * legs * legs;
    cell.corners += weight * corners;
    cell.corners_sq += weight * corners * corners;
  }
  sc.leg_delta[tcount] = 0;
  sc.corner_delta[tcount] = 0;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  if (estimate_work(spec) > spec.max_work_units)
    fail(Errc::capacity, "run_sweep: estimated work exceeds max_work_units");

  SweepResult result;
  result.theta_grid = spec.theta_grid;
  std::sort(result.theta_grid.begin(), result.theta_grid.end());
  result.r_list = spec.r_list;
  const std::size_t tcount = result.theta_grid.size();

  const int weight = spec.phi_quarter_turn_only ? 4 : 1;
  const int phi_count = spec.phi_quarter_turn_only ? spec.phi_steps / 4 : spec.phi_steps;
  const std::int64_t apex_count =
      static_cast<std::int64_t>(spec.apex_steps) * spec.apex_steps;
  const std::int64_t chunk_count = static_cast<std::int64_t>(phi_count) * apex_count;
  const std::int64_t sample_count =
      static_cast<std::int64_t>(spec.phi_steps) * spec.apex_steps * spec.apex_steps;

  unsigned thread_count = spec.threads == 0
                              ? std::max(1u, std::thread::hardware_concurrency())
                              : static_cast<unsigned>(spec.threads);
  thread_count = static_cast<unsigned>(
      std::min<std::int64_t>(thread_count, std::max<std::int64_t>(1, chunk_count)));

  result.cells.assign(spec.r_list.size() * tcount, SweepCell{});

  for (std::size_t ri = 0; ri < spec.r_list.size(); ++ri) {
    const double r = spec.r_list[ri];
    std::vector<std::vector<Tally>> partial(thread_count, std::vector<Tally>(tcount));

    auto worker = [&](unsigned tid) {
      Scratch sc(r, tcount);
      for (std::int64_t i = tid; i < chunk_count; i += thread_count) {
        const int k = static_cast<int>(i / apex_count);
        const std::int64_t a = i % apex_count;
        const int ai = static_cast<int>(a / spec.apex_steps);
        const int aj = static_cast<int>(a % spec.apex_steps);
        const double phi = kTwoPi * k / spec.phi_steps;
        const double u = (ai + 0.5) / spec.apex_steps;
        const double v = (aj + 0.5) / spec.apex_steps;
        accumulate_sample(result.theta_grid, r, phi, u, v, weight, sc, partial[tid]);
      }
    };

    if (thread_count == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(thread_count);
      for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }

    for (std::size_t ti = 0; ti < tcount; ++ti) {
      Tally total;
      for (unsigned t = 0; t < thread_count; ++t) total += partial[t][ti];
      SweepCell& cell = result.cells[ri * tcount + ti];
      cell.r = r;
      cell.theta = result.theta_grid[ti];
      cell.total_legs = total.legs;
      cell.total_legs_sq = total.legs_sq;
      cell.total_corners = total.corners;
      cell.total_corners_sq = total.corners_sq;
      cell.sample_count = sample_count;
      const double n = static_cast<double>(sample_count);
      cell.mean_legs = static_cast<double>(total.legs) / n;
      cell.mean_corners = static_cast<double>(total.corners) / n;
      const double var_legs =
          std::max(0.0, static_cast<double>(total.legs_sq) / n - cell.mean_legs * cell.mean_legs);
      const double var_corners = std::max(
          0.0, static_cast<double>(total.corners_sq) / n - cell.mean_corners * cell.mean_corners);
      cell.se_legs = std::sqrt(var_legs / n);
      cell.se_corners = std::sqrt(var_corners / n);
    }
  }
  return result;
}

double estimate_skip_probability(double theta, int phi_steps, int apex_steps) {
  validate_grids(phi_steps, apex_steps);
  if (!std::isfinite(theta) || theta <= 0.0 || theta > kPi)
    fail(Errc::domain, "estimate_skip_probability: theta must lie in (0, pi]");
  std::int64_t hits = 0;
  for (int k = 0; k < phi_steps; ++k) {
    const double phi = kTwoPi * k / phi_steps;
    for (int i = 0; i < apex_steps; ++i) {
      for (int j = 0; j < apex_steps; ++j) {
        const double u = (i + 0.5) / apex_steps;
        const double v = (j + 0.5) / apex_steps;
        if (nearest_cell_skip_indicator(theta, phi, u, v)) ++hits;
      }
    }
  }
  const std::int64_t samples = static_cast<std::int64_t>(phi_steps) * apex_steps * apex_steps;
  return static_cast<double>(hits) / static_cast<double>(samples);
}

double estimate_corner_rate(double theta, int phi_steps, int apex_steps) {
  validate_grids(phi_steps, apex_steps);
  if (!std::isfinite(theta) || theta <= 0.0 || theta > kPi)
    fail(Errc::domain, "estimate_corner_rate: theta must lie in (0, pi]");
  std::int64_t turns = 0;
  for (int k = 0; k < phi_steps; ++k) {
    const double phi = kTwoPi * k / phi_steps;
    for (int i = 0; i < apex_steps; ++i) {
      for (int j = 0; j < apex_steps; ++j) {
        const double u = (i + 0.5) / apex_steps;
        const double v = (j + 0.5) / apex_steps;
        turns += nearest_cell_corner_indicator(theta, phi, u, v);
      }
    }
  }
  const std::int64_t samples = static_cast<std::int64_t>(phi_steps) * apex_steps * apex_steps;
  return static_cast<double>(turns) / static_cast<double>(samples);
}

}  // namespace cornercount

#pragma once

#include <vector>

#include "core/sweep.hpp"

namespace cornercount {

// Shape regressor (pi - theta) * cot(theta).  Continuous limit -1 at
// theta == pi is substituted exactly; theta == 0 and other cot poles (none in
// (0, pi)) are rejected.
double corner_regressor(double theta);

struct FitResult {
  double alpha = 0.0;   // intercept
  double beta = 0.0;    // coefficient on the regressor
  double nmse = 0.0;    // mean squared residual / squared value range
  int n_points = 0;
};

// Least-squares fit of y ~ alpha + beta * corner_regressor(theta) over the
// given points.  Requires >= 2 points and at least two distinct regressor
// values.  nmse is 0 when all y are equal.
FitResult fit_corner_model(const std::vector<double>& thetas, const std::vector<double>& values);

struct RadiusFit {
  double r = 0.0;
  FitResult legs;
  FitResult corners;
};

// Per-radius fits of mean_legs and mean_corners against the regressor,
// restricted to thetas in [theta_min, theta_max].
std::vector<RadiusFit> fit_sweep(const SweepResult& sweep, double theta_min, double theta_max);

// Population standard deviation of |beta| over the rows, divided by the mean
// of |beta|.  Requires a nonempty list and nonzero mean.
double relative_spread(const std::vector<double>& betas);

struct BetaTrend {
  std::vector<double> r_values;
  std::vector<double> beta_legs;
  std::vector<double> beta_corners;
  double spread_legs = 0.0;
  double spread_corners = 0.0;
};

// Beta-versus-radius summary over a sweep covering >= 2 radii.
BetaTrend beta_vs_radius(const SweepResult& sweep, double theta_min, double theta_max);

}  // namespace cornercount

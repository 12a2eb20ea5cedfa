#include "core/fit.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/angles.hpp"

namespace cornercount {

double corner_regressor(double theta) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta > kPi)
    fail(Errc::domain, "corner_regressor: theta must lie in (0, pi]");
  if (theta == kPi) return -1.0;  // limit; naive expression yields -0.0 here
  return (kPi - theta) * (std::cos(theta) / std::sin(theta));
}

FitResult fit_corner_model(const std::vector<double>& thetas, const std::vector<double>& values) {
  if (thetas.size() != values.size())
    fail(Errc::invalid_argument, "fit_corner_model: size mismatch");
  if (thetas.size() < 2) fail(Errc::invalid_argument, "fit_corner_model: need >= 2 points");

  const std::size_t n = thetas.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = corner_regressor(thetas[i]);

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += values[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (values[i] - my);
  }
  if (sxx == 0.0) fail(Errc::rank_deficient, "fit_corner_model: regressor is constant");

  FitResult out;
  out.beta = sxy / sxx;
  out.alpha = my - out.beta * mx;
  out.n_points = static_cast<int>(n);

  double mse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = values[i] - (out.alpha + out.beta * x[i]);
    mse += resid * resid;
  }
  mse /= static_cast<double>(n);

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  out.nmse = (range > 0.0) ? mse / (range * range) : 0.0;
  return out;
}

std::vector<RadiusFit> fit_sweep(const SweepResult& sweep, double theta_min, double theta_max) {
  if (!(theta_min < theta_max))
    fail(Errc::invalid_argument, "fit_sweep: need theta_min < theta_max");
  std::vector<RadiusFit> out;
  out.reserve(sweep.r_list.size());
  for (std::size_t ri = 0; ri < sweep.r_list.size(); ++ri) {
    std::vector<double> th, legs, corners;
    for (std::size_t ti = 0; ti < sweep.theta_grid.size(); ++ti) {
      const double t = sweep.theta_grid[ti];
      if (t < theta_min || t > theta_max) continue;
      const SweepCell& c = sweep.cell(ri, ti);
      th.push_back(t);
      legs.push_back(c.mean_legs);
      corners.push_back(c.mean_corners);
    }
    if (th.size() < 2)
      fail(Errc::invalid_argument, "fit_sweep: fewer than 2 grid points in the fit window");
    RadiusFit rf;
    rf.r = sweep.r_list[ri];
    rf.legs = fit_corner_model(th, legs);
    rf.corners = fit_corner_model(th, corners);
    out.push_back(rf);
  }
  return out;
}

BetaTrend beta_vs_radius(const SweepResult& sweep, double theta_min, double theta_max) {
  if (sweep.r_list.size() < 2)
    fail(Errc::invalid_argument, "beta_vs_radius: need sweeps over >= 2 radii");
  BetaTrend trend;
  for (const RadiusFit& rf : fit_sweep(sweep, theta_min, theta_max)) {
    trend.r_values.push_back(rf.r);
    trend.beta_legs.push_back(rf.legs.beta);
    trend.beta_corners.push_back(rf.corners.beta);
  }
  trend.spread_legs = relative_spread(trend.beta_legs);
  trend.spread_corners = relative_spread(trend.beta_corners);
  return trend;
}

double relative_spread(const std::vector<double>& betas) {
  if (betas.empty()) fail(Errc::invalid_argument, "relative_spread: empty input");
  double mean = 0.0;
  for (double b : betas) mean += std::abs(b);
  mean /= static_cast<double>(betas.size());
  if (mean == 0.0) fail(Errc::domain, "relative_spread: zero mean");
  double var = 0.0;
  for (double b : betas) {
    const double d = std::abs(b) - mean;
    var += d * d;
  }
  var /= static_cast<double>(betas.size());
  return std::sqrt(var) / mean;
}

}  // namespace cornercount

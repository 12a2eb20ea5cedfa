#include "core/analytic.hpp"

#include <cmath>
#include <limits>

#include "core/angles.hpp"
#include "core/error.hpp"

namespace cornercount {
namespace {

constexpr double kHalfPi = kPi / 2.0;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require_theta(double theta, double lo, const char* who) {
  if (!std::isfinite(theta) || theta <= lo || theta > kPi) fail(Errc::domain, who);
}

// Recursive adaptive Simpson.  Accumulates the accepted-interval error
// estimates; clears `converged` when the depth budget runs out on a
// still-too-rough interval (the best estimate is kept).
template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, double& err, bool& converged) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double split = left + right;
  const double delta = split - whole;
  if (std::abs(delta) <= 15.0 * tol || depth == 0) {
    if (depth == 0 && std::abs(delta) > 15.0 * tol) converged = false;
    err += std::abs(delta) / 15.0;
    return split + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, err, converged) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, err, converged);
}

template <typename F>
QuadResult adaptive_simpson(const F& f, double a, double b, double tol) {
  QuadResult out;
  out.converged = true;
  if (!(b > a)) return {0.0, 0.0, true};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  out.value = simpson_step(f, a, b, fa, fm, fb, whole, tol, 48, out.error_estimate, out.converged);
  return out;
}

}  // namespace

double theta_c() { return 2.0 * std::atan(0.5); }

// Written as a subtraction so theta == pi yields +0.0, not -0.0.
double b_shape(double theta) { return 0.0 - (1.0 + corner_regressor(theta)); }

namespace {

// cos(w)cos(theta-w)/(2 sin theta) == 1/(2(tan(theta-w)+tan(w))) wherever
// the product is positive, which is exactly the window (theta-pi/2, pi/2);
// unlike the tangent form it has no poles to special-case.
double pskip_reduced(double theta, double w) {
  const double num = std::cos(w) * std::cos(theta - w);
  if (!(num > 0.0)) return 0.0;
  return num / (2.0 * std::sin(theta));
}

}  // namespace

double pskip_phi(double theta, double phi) {
  require_theta(theta, 0.0, "pskip_phi: theta must lie in (0, pi]");
  if (!std::isfinite(phi)) fail(Errc::domain, "pskip_phi: phi must be finite");
  double w = std::fmod(phi, kHalfPi);
  if (w < 0.0) w += kHalfPi;
  if (w >= kHalfPi) w = 0.0;
  return pskip_reduced(theta, w);
}

double pskip_closed(double theta) {
  return 0.25 * (1.0 - corner_regressor(theta));
}

bool pskip_closed_in_validity(double theta) { return theta > theta_c() && theta <= kPi; }

QuadResult pskip_quadrature(double theta, double tol) {
  require_theta(theta, 0.0, "pskip_quadrature: theta must lie in (0, pi]");
  if (!(tol > 0.0)) fail(Errc::invalid_argument, "pskip_quadrature: tol must be positive");
  const double lo = theta - kHalfPi;
  const double hi = kHalfPi;
  if (!(lo < hi)) return {0.0, 0.0, true};  // empty window at theta == pi
  if (lo < 0.0) {
    // The mod-pi/2 reduction makes the integrand jump at phi = 0; integrate
    // the two smooth branches separately, each written in its own reduced
    // coordinate so the shared endpoint takes the branch's one-sided value.
    const auto left = [theta](double phi) { return pskip_reduced(theta, phi + kHalfPi); };
    const auto right = [theta](double phi) { return pskip_reduced(theta, phi); };
    QuadResult a = adaptive_simpson(left, lo, 0.0, 0.5 * tol);
    QuadResult b = adaptive_simpson(right, 0.0, hi, 0.5 * tol);
    return {a.value + b.value, a.error_estimate + b.error_estimate, a.converged && b.converged};
  }
  const auto f = [theta](double phi) { return pskip_reduced(theta, phi); };
  return adaptive_simpson(f, lo, hi, tol);
}

double pcorner_phi(double theta, double phi) {
  require_theta(theta, 0.0, "pcorner_phi: theta must lie in (0, pi]");
  if (theta == kPi) fail(Errc::domain, "pcorner_phi: theta must lie in (0, pi)");
  if (!(phi > 0.0) || !(phi < theta))
    fail(Errc::domain, "pcorner_phi: phi must lie strictly between the cot poles at 0 and theta");
  const double cot_a = std::cos(phi) / std::sin(phi);
  const double cot_b = std::cos(theta - phi) / std::sin(theta - phi);
  return 0.5 * cot_a + 0.5 * cot_b - 2.0 * pskip_phi(theta, phi);
}

double pcorner_closed(double theta) {
  require_theta(theta, kHalfPi, "pcorner_closed: theta must lie in (pi/2, pi]");
  return std::log(std::cos(kPi - theta)) - 2.0 * pskip_closed(theta);
}

double pcorner_approx(double theta) {
  require_theta(theta, kHalfPi, "pcorner_approx: theta must lie in (pi/2, pi]");
  return -2.0 * pskip_closed(theta);
}

QuadResult pcorner_quadrature(double theta, double tol) {
  require_theta(theta, kHalfPi, "pcorner_quadrature: theta must lie in (pi/2, pi]");
  if (!(tol > 0.0)) fail(Errc::invalid_argument, "pcorner_quadrature: tol must be positive");
  const double lo = theta - kHalfPi;
  const double hi = kHalfPi;
  if (!(lo < hi)) return {0.0, 0.0, true};  // empty window at theta == pi
  const auto f = [theta](double phi) { return pcorner_phi(theta, phi); };
  return adaptive_simpson(f, lo, hi, tol);
}

std::vector<AnalyticRow> compare_estimators(const std::vector<double>& thetas, int phi_steps,
                                            int apex_steps, double quad_tol) {
  if (!(quad_tol > 0.0)) fail(Errc::invalid_argument, "compare_estimators: quad_tol must be > 0");
  std::vector<AnalyticRow> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas) {
    require_theta(theta, 0.0, "compare_estimators: theta must lie in (0, pi]");
    AnalyticRow row;
    row.theta = theta;
    row.pskip_closed = pskip_closed(theta);
    row.b_shape = b_shape(theta);

    const QuadResult sq = pskip_quadrature(theta, quad_tol);
    if (sq.converged) {
      row.pskip_quad = sq.value;
      row.pskip_quad_err = sq.error_estimate;
    } else {
      row.pskip_quad = kNan;
      row.pskip_quad_err = kNan;
      row.complete = false;
    }

    if (theta > kHalfPi) {
      row.pcorner_closed = pcorner_closed(theta);
      row.pcorner_approx = pcorner_approx(theta);
      const QuadResult cq = pcorner_quadrature(theta, quad_tol);
      if (cq.converged) {
        row.pcorner_quad = cq.value;
      } else {
        row.pcorner_quad = kNan;
        row.complete = false;
      }
    } else {
      // The corner closed form needs log cos(pi-theta) > 0 and the corner
      // quadrature window contains the cot pole: no value exists here.
      row.pcorner_closed = kNan;
      row.pcorner_quad = kNan;
      row.pcorner_approx = kNan;
      row.complete = false;
    }

    row.mc_skip_freq = estimate_skip_probability(theta, phi_steps, apex_steps);
    row.mc_corner_rate = estimate_corner_rate(theta, phi_steps, apex_steps);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cornercount

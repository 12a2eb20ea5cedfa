#pragma once

#include <vector>

#include "core/fit.hpp"

namespace cornercount {

// Validity threshold 2*atan(1/2) below which the skip closed form leaves its
// stated range.
double theta_c();

// -(1 + (pi-theta)*cot(theta)); exactly 0 at theta == pi.  Domain (0, pi].
double b_shape(double theta);

// Per-orientation skip probability 1/(2(tan(theta-phi)+tan(phi))), reduced to
// w = phi mod pi/2 and evaluated in the pole-free product form
// cos(w)cos(theta-w)/(2 sin theta); 0 where that product is not positive
// (exactly the stated window (theta-pi/2, pi/2)).  Domain theta in (0, pi];
// identically 0 at pi.
double pskip_phi(double theta, double phi);

// Closed-form skip probability (1 - (pi-theta)cot(theta))/4.  Domain
// (0, pi]; the value is computed on the whole domain and callers consult
// pskip_closed_in_validity for the theta > theta_c validity tag.
double pskip_closed(double theta);
bool pskip_closed_in_validity(double theta);

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

// Adaptive quadrature of pskip_phi over phi in (theta-pi/2, pi/2).  Domain
// (0, pi]; the window is empty at pi and the integral is exactly 0 there.
QuadResult pskip_quadrature(double theta, double tol);

// (cot(phi) + cot(theta-phi))/2 - 2*pskip_phi(theta, phi).  Domain: theta in
// (0, pi), phi strictly between the cot poles at 0 and theta.
double pcorner_phi(double theta, double phi);

// log cos(pi-theta) - 2*pskip_closed(theta) and its near-pi approximation
// -2*pskip_closed(theta).  Domain (pi/2, pi] (log argument positive).
double pcorner_closed(double theta);
double pcorner_approx(double theta);

// Adaptive quadrature of pcorner_phi over phi in (theta-pi/2, pi/2).  Domain
// (pi/2, pi]: below pi/2 the window contains the cot pole at phi = 0 and the
// integral does not exist.  Empty window at pi -> exactly 0.
QuadResult pcorner_quadrature(double theta, double tol);

// One comparison row: closed forms, quadratures, and grid Monte Carlo
// frequencies side by side.  Cells whose operation has no value at this theta
// hold NaN and clear `complete` (the corner closed forms below pi/2, the
// corner quadrature below pi/2, non-converged quadratures).
struct AnalyticRow {
  double theta = 0.0;
  double pskip_closed = 0.0;
  double pskip_quad = 0.0;
  double pskip_quad_err = 0.0;
  double pcorner_closed = 0.0;
  double pcorner_quad = 0.0;
  double pcorner_approx = 0.0;
  double b_shape = 0.0;
  double mc_skip_freq = 0.0;
  double mc_corner_rate = 0.0;
  bool complete = true;
};

// Rows for each theta in (0, pi].  Component failures blank the affected
// cells and mark the row incomplete; remaining rows are still produced.
std::vector<AnalyticRow> compare_estimators(const std::vector<double>& thetas, int phi_steps,
                                            int apex_steps, double quad_tol);

}  // namespace cornercount

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "core/analytic.hpp"
#include "core/error.hpp"
#include "core/sweep.hpp"
#include "doctest.h"

using namespace cornercount;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}

}  // namespace

TEST_CASE("validity threshold") {
  CHECK(theta_c() == 2.0 * std::atan(0.5));
  CHECK(theta_c() == doctest::Approx(0.9272952180016122).epsilon(1e-15));
  CHECK(!pskip_closed_in_validity(theta_c()));  // strict threshold
  CHECK(pskip_closed_in_validity(std::nextafter(theta_c(), 4.0)));
  CHECK(pskip_closed_in_validity(kPi));
  CHECK(!pskip_closed_in_validity(0.5));
}

TEST_CASE("shape coefficient") {
  CHECK(b_shape(kPi) == 0.0);
  CHECK(!std::signbit(b_shape(kPi)));  // +0.0, not -0.0
  for (const double t : {0.3, 1.0, kPi / 2, 2.5}) {
    CHECK(b_shape(t) == doctest::Approx(-(1.0 + corner_regressor(t))).epsilon(1e-15));
  }
  CHECK(code_of([] { b_shape(0.0); }) == Errc::domain);
  CHECK(code_of([] { b_shape(3.5); }) == Errc::domain);
}

TEST_CASE("per-orientation skip probability") {
  // Anchor: theta = pi/2, phi = pi/4 -> 1/(2(tan(pi/4)+tan(pi/4))) = 1/4.
  CHECK(pskip_phi(kPi / 2, kPi / 4) == doctest::Approx(0.25).epsilon(1e-14));

  // Product form equals the naive tangent expression inside the window.
  const double theta = 2.0;
  for (const double phi : {theta - kPi / 2 + 0.1, 0.9, 1.3, kPi / 2 - 0.05}) {
    const double naive = 1.0 / (2.0 * (std::tan(theta - phi) + std::tan(phi)));
    CHECK(pskip_phi(theta, phi) == doctest::Approx(naive).epsilon(1e-12));
  }

  // Zero outside the window (reduced angle w = phi mod pi/2 at or below
  // theta - pi/2 ~ 0.43, where cos(theta - w) <= 0).
  CHECK(pskip_phi(theta, 0.2) == 0.0);
  CHECK(pskip_phi(theta, 0.4) == 0.0);
  CHECK(pskip_phi(theta, kPi / 2) == 0.0);   // reduces to w = 0
  CHECK(pskip_phi(theta, 0.2 + kPi) == 0.0);  // periodic image of 0.2
  // Periodic images of an interior phi agree (up to the rounding of the
  // shifted argument itself).
  CHECK(pskip_phi(theta, 0.9 + kPi / 2) == doctest::Approx(pskip_phi(theta, 0.9)).epsilon(1e-12));
  CHECK(pskip_phi(theta, 0.9 + kPi) == doctest::Approx(pskip_phi(theta, 0.9)).epsilon(1e-12));
  CHECK(pskip_phi(theta, 0.9 - kPi / 2) == doctest::Approx(pskip_phi(theta, 0.9)).epsilon(1e-12));

  // Identically zero at theta = pi (empty window).
  for (const double phi : {0.0, 0.3, 1.2, 5.0}) CHECK(pskip_phi(kPi, phi) == 0.0);

  CHECK(code_of([] { pskip_phi(0.0, 0.3); }) == Errc::domain);
  CHECK(code_of([] { pskip_phi(3.5, 0.3); }) == Errc::domain);
}

TEST_CASE("closed-form skip probability") {
  CHECK(pskip_closed(3.0 * kPi / 4.0) ==
        doctest::Approx(0.44634954084936207).epsilon(1e-15));
  CHECK(pskip_closed(kPi) == doctest::Approx(0.5).epsilon(1e-15));
  // At pi/2 the closed form is 1/4 up to the roundoff of cot(pi/2).
  CHECK(std::abs(pskip_closed(kPi / 2) - 0.25) <= 1e-15);
  // Definition holds everywhere on the domain.
  for (const double t : {0.2, 1.0, 2.0, 3.0}) {
    CHECK(pskip_closed(t) ==
          doctest::Approx((1.0 - corner_regressor(t)) / 4.0).epsilon(1e-15));
  }
  CHECK(code_of([] { pskip_closed(0.0); }) == Errc::domain);
  CHECK(code_of([] { pskip_closed(-1.0); }) == Errc::domain);
}

TEST_CASE("skip quadrature agrees with the closed form on (0, pi]") {
  // The orientation average of pskip_phi is (1 + (pi-theta)cot(theta))/4,
  // i.e. (1 + regressor)/4 — note the sign relative to the closed form's
  // (1 - regressor)/4; the two coincide only at theta = pi/2.
  for (double t = 0.05; t < kPi; t += 0.13) {
    const QuadResult q = pskip_quadrature(t, 1e-10);
    CAPTURE(t);
    CHECK(q.converged);
    const double expected = (1.0 + corner_regressor(t)) / 4.0;
    CHECK(std::abs(q.value - expected) <= std::max(1e-8, 10.0 * q.error_estimate));
  }

  // Frozen anchors.
  const QuadResult half = pskip_quadrature(kPi / 2, 1e-10);
  CHECK(half.converged);
  CHECK(std::abs(half.value - 0.25) <= 1e-10);
  const QuadResult threeq = pskip_quadrature(3.0 * kPi / 4.0, 1e-10);
  CHECK(threeq.converged);
  CHECK(std::abs(threeq.value - 0.05365045915063793) <= 1e-9);
  const QuadResult narrow = pskip_quadrature(0.3 * kPi, 1e-10);
  CHECK(narrow.converged);
  CHECK(std::abs(narrow.value - 0.649437616987885) <= 1e-9);

  // Empty window at pi is exact.
  const QuadResult at_pi = pskip_quadrature(kPi, 1e-10);
  CHECK(at_pi.value == 0.0);
  CHECK(at_pi.error_estimate == 0.0);
  CHECK(at_pi.converged);

  CHECK(code_of([] { pskip_quadrature(0.0, 1e-10); }) == Errc::domain);
  CHECK(code_of([] { pskip_quadrature(1.0, 0.0); }) == Errc::invalid_argument);
  CHECK(code_of([] { pskip_quadrature(1.0, -1e-8); }) == Errc::invalid_argument);
}

TEST_CASE("per-orientation corner density") {
  // Formula cross-check away from the poles.
  const double theta = 2.4;
  for (const double phi : {0.4, 1.0, 1.7, 2.2}) {
    const double naive =
        (std::cos(phi) / std::sin(phi) + std::cos(theta - phi) / std::sin(theta - phi)) / 2.0 -
        2.0 * pskip_phi(theta, phi);
    CHECK(pcorner_phi(theta, phi) == doctest::Approx(naive).epsilon(1e-12));
  }
  // Poles at phi = 0 and phi = theta are excluded, endpoints included.
  CHECK(code_of([] { pcorner_phi(2.4, 0.0); }) == Errc::domain);
  CHECK(code_of([] { pcorner_phi(2.4, 2.4); }) == Errc::domain);
  CHECK(code_of([] { pcorner_phi(2.4, -0.1); }) == Errc::domain);
  CHECK(code_of([] { pcorner_phi(kPi, 1.0); }) == Errc::domain);  // theta in (0, pi)
}

TEST_CASE("closed-form corner density and its near-flat approximation") {
  CHECK(pcorner_closed(3.0 * kPi / 4.0) ==
        doctest::Approx(-1.2392726719786968).epsilon(1e-14));
  CHECK(pcorner_closed(kPi) == -1.0);  // log 1 - 2 * (1/2), exactly
  for (const double t : {1.8, 2.2, 2.8}) {
    CHECK(pcorner_closed(t) ==
          doctest::Approx(std::log(std::cos(kPi - t)) - 2.0 * pskip_closed(t)).epsilon(1e-13));
    CHECK(pcorner_approx(t) == doctest::Approx(-2.0 * pskip_closed(t)).epsilon(1e-15));
    CHECK(pcorner_closed(t) - pcorner_approx(t) ==
          doctest::Approx(std::log(std::cos(kPi - t))).epsilon(1e-12));
  }
  // Reference value: -log(cos(pi - 0.9 pi)) evaluated at 60-digit precision
  // for the exact double argument.
  CHECK(std::abs(pcorner_closed(0.9 * kPi) - pcorner_approx(0.9 * kPi)) ==
        doctest::Approx(0.050181789921618536).epsilon(1e-12));

  // Domain stops at pi/2 where the log argument hits zero.
  CHECK(code_of([] { pcorner_closed(kPi / 2); }) == Errc::domain);
  CHECK(code_of([] { pcorner_approx(kPi / 2); }) == Errc::domain);
  CHECK(code_of([] { pcorner_closed(0.3); }) == Errc::domain);
}

TEST_CASE("corner quadrature and its identity with the skip integral") {
  // Orientation average: -log cos(pi - theta) - 2 * <pskip>_phi.
  for (const double t : {1.7, 2.0, 2.356194490192345, 2.8, 3.1}) {
    const QuadResult q = pcorner_quadrature(t, 1e-10);
    CAPTURE(t);
    CHECK(q.converged);
    const QuadResult s = pskip_quadrature(t, 1e-10);
    const double expected = -std::log(std::cos(kPi - t)) - 2.0 * s.value;
    CHECK(std::abs(q.value - expected) <=
          std::max(1e-8, 10.0 * (q.error_estimate + s.error_estimate)));
  }
  const QuadResult threeq = pcorner_quadrature(3.0 * kPi / 4.0, 1e-10);
  CHECK(std::abs(threeq.value - 0.23927267197869678) <= 1e-8);

  const QuadResult at_pi = pcorner_quadrature(kPi, 1e-10);
  CHECK(at_pi.value == 0.0);
  CHECK(at_pi.converged);

  // Below pi/2 the integrand has a non-integrable pole inside the window.
  CHECK(code_of([] { pcorner_quadrature(1.2, 1e-10); }) == Errc::domain);
  CHECK(code_of([] { pcorner_quadrature(kPi / 2, 1e-10); }) == Errc::domain);
  CHECK(code_of([] { pcorner_quadrature(2.0, 0.0); }) == Errc::invalid_argument);
}

TEST_CASE("estimator comparison rows") {
  const std::vector<double> thetas = {0.3 * kPi, 0.75 * kPi, kPi};
  const std::vector<AnalyticRow> rows = compare_estimators(thetas, 40, 6, 1e-8);
  REQUIRE(rows.size() == 3);

  // theta below pi/2: corner cells have no value, row is incomplete, but the
  // skip cells are still filled.
  const AnalyticRow& low = rows[0];
  CHECK(low.theta == 0.3 * kPi);
  CHECK(!low.complete);
  CHECK(std::isnan(low.pcorner_closed));
  CHECK(std::isnan(low.pcorner_quad));
  CHECK(std::isnan(low.pcorner_approx));
  CHECK(std::isfinite(low.pskip_closed));
  CHECK(std::isfinite(low.pskip_quad));
  CHECK(std::isfinite(low.mc_skip_freq));
  CHECK(low.pskip_closed == pskip_closed(0.3 * kPi));
  CHECK(low.mc_skip_freq == estimate_skip_probability(0.3 * kPi, 40, 6));
  CHECK(low.mc_corner_rate == estimate_corner_rate(0.3 * kPi, 40, 6));

  // theta above pi/2: every cell filled, matching the scalar functions.
  const AnalyticRow& mid = rows[1];
  CHECK(mid.complete);
  CHECK(mid.pskip_closed == pskip_closed(0.75 * kPi));
  CHECK(mid.pcorner_closed == pcorner_closed(0.75 * kPi));
  CHECK(mid.pcorner_approx == pcorner_approx(0.75 * kPi));
  CHECK(mid.b_shape == b_shape(0.75 * kPi));
  CHECK(mid.pskip_quad == doctest::Approx(pskip_quadrature(0.75 * kPi, 1e-8).value));
  CHECK(mid.pcorner_quad == doctest::Approx(pcorner_quadrature(0.75 * kPi, 1e-8).value));
  CHECK(mid.mc_skip_freq == estimate_skip_probability(0.75 * kPi, 40, 6));

  // theta = pi: wedge covers the half plane; the cell is never skipped.
  const AnalyticRow& top = rows[2];
  CHECK(top.complete);
  CHECK(top.mc_skip_freq == 0.0);
  CHECK(top.pskip_quad == 0.0);
  CHECK(top.b_shape == 0.0);

  CHECK(compare_estimators({}, 40, 6, 1e-8).empty());
  CHECK(code_of([] { compare_estimators({0.0}, 40, 6, 1e-8); }) == Errc::domain);
  CHECK(code_of([] { compare_estimators({1.0}, 0, 6, 1e-8); }) == Errc::invalid_argument);
  CHECK(code_of([] { compare_estimators({1.0}, 40, 6, 0.0); }) == Errc::invalid_argument);
}

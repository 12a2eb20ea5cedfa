#include "core/angles.hpp"

namespace cornercount {

double normalize_angle(double raw) {
  if (!std::isfinite(raw)) fail(Errc::invalid_argument, "normalize_angle: input must be finite");
  double a = std::fmod(raw, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  // Adding 2*pi to a tiny negative remainder can round to 2*pi itself.
  if (a >= kTwoPi) a = 0.0;
  return a;
}

}  // namespace cornercount

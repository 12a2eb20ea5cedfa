#pragma once

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace cornercount {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps any finite angle onto the canonical branch [0, 2*pi).
double normalize_angle(double raw);

// Polar angle of (dx, dy) measured from the ray at `phi`, canonicalized to
// [0, 2*pi).  Single source of truth for wedge membership: a point lies in a
// wedge of opening theta anchored at phi iff relative_angle(...) < theta.
inline double relative_angle(double dx, double dy, double phi) {
  return normalize_angle(std::atan2(dy, dx) - phi);
}

}  // namespace cornercount

#include "core/sector.hpp"

#include <cmath>

namespace cornercount {

void validate(const SectorConfig& c) {
  if (!std::isfinite(c.apex_u) || !std::isfinite(c.apex_v) || c.apex_u < 0.0 || c.apex_u >= 1.0 ||
      c.apex_v < 0.0 || c.apex_v >= 1.0)
    fail(Errc::invalid_argument, "SectorConfig: apex offset must lie in [0,1)^2");
  if (!std::isfinite(c.phi)) fail(Errc::invalid_argument, "SectorConfig: phi must be finite");
  if (!std::isfinite(c.theta) || c.theta < 0.0 || c.theta > kTwoPi)
    fail(Errc::invalid_argument, "SectorConfig: theta must lie in [0, 2*pi]");
  if (!std::isfinite(c.radius) || c.radius <= 0.0)
    fail(Errc::invalid_argument, "SectorConfig: radius must be positive");
}

bool site_in_sector(const SectorConfig& c, Site s) {
  validate(c);
  const double dx = static_cast<double>(s.x) - c.apex_u;
  const double dy = static_cast<double>(s.y) - c.apex_v;
  if (dx * dx + dy * dy > c.radius * c.radius) return false;
  return relative_angle(dx, dy, c.phi) < c.theta;
}

bool site_in_wedge(double theta, double phi, double apex_u, double apex_v, Site s) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kTwoPi)
    fail(Errc::invalid_argument, "site_in_wedge: theta must lie in [0, 2*pi]");
  if (!std::isfinite(phi)) fail(Errc::invalid_argument, "site_in_wedge: phi must be finite");
  if (!std::isfinite(apex_u) || !std::isfinite(apex_v) || apex_u < 0.0 || apex_u >= 1.0 ||
      apex_v < 0.0 || apex_v >= 1.0)
    fail(Errc::invalid_argument, "site_in_wedge: apex offset must lie in [0,1)^2");
  const double dx = static_cast<double>(s.x) - apex_u;
  const double dy = static_cast<double>(s.y) - apex_v;
  return relative_angle(dx, dy, phi) < theta;
}

std::vector<Site> enumerate_system_sites(const SectorConfig& c) {
  validate(c);
  std::vector<Site> sites;
  const double r2 = c.radius * c.radius;
  const auto ylo = static_cast<std::int64_t>(std::ceil(c.apex_v - c.radius));
  const auto yhi = static_cast<std::int64_t>(std::floor(c.apex_v + c.radius));
  for (std::int64_t y = ylo; y <= yhi; ++y) {
    const double dy = static_cast<double>(y) - c.apex_v;
    const double slack = r2 - dy * dy;
    if (slack < 0.0) continue;
    const double w = std::sqrt(slack);
    // Widen the row span by one column each side and filter exactly, so sqrt
    // rounding can never drop a boundary site (membership is dist <= r).
    const auto xlo = static_cast<std::int64_t>(std::ceil(c.apex_u - w)) - 1;
    const auto xhi = static_cast<std::int64_t>(std::floor(c.apex_u + w)) + 1;
    for (std::int64_t x = xlo; x <= xhi; ++x) {
      const double dx = static_cast<double>(x) - c.apex_u;
      if (dx * dx + dy * dy <= r2) sites.push_back(Site{x, y});
    }
  }
  return sites;
}

}  // namespace cornercount

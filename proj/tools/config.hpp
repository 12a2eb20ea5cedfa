#pragma once

// Run configuration for the cornercount CLI: defaults, key=value config
// files, "0.15pi" angle literals, and the content hash that names output
// directories.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

inline constexpr double kPi = 3.14159265358979323846;

// Thrown for anything that is the caller's fault: unknown keys, malformed
// values.  main() maps it to exit code 2.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

inline std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  if (s.empty()) throw UsageError(what + ": empty value");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw UsageError(what + ": cannot parse '" + raw + "'");
  return v;
}

// Angles are plain radians or a multiple of pi written as "<number>pi"
// ("pi", "-pi", "0.15pi", "1e-2pi" all work).
inline double parse_angle(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    std::string head = trim(s.substr(0, s.size() - 2));
    if (head.empty() || head == "+") return kPi;
    if (head == "-") return -kPi;
    return parse_double(head, what) * kPi;
  }
  return parse_double(s, what);
}

inline long long parse_int(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  if (s.empty()) throw UsageError(what + ": empty value");
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) throw UsageError(what + ": cannot parse '" + raw + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  if (s.empty()) throw UsageError(what + ": empty value");
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) throw UsageError(what + ": cannot parse '" + raw + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    const size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

struct RunConfig {
  std::vector<double> r_list = {4, 8, 16, 32};
  double theta_min = 0.02 * kPi;
  double theta_max = 0.99 * kPi;
  int theta_steps = 60;
  int phi_steps = 100;
  int apex_steps = 10;
  double fit_theta_min = 0.15 * kPi;
  double fit_theta_max = 0.99 * kPi;
  double quad_tol = 1e-8;
  double rank_tol = 1e-10;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  // Applies one key=value pair; the single funnel for config files and
  // command-line overrides, so both accept the same value syntax.
  void apply(const std::string& key, const std::string& value) {
    if (key == "r_list") {
      std::vector<double> rs;
      for (const std::string& tok : split(value, ','))
        if (!trim(tok).empty()) rs.push_back(parse_double(tok, "r_list"));
      if (rs.empty()) throw UsageError("r_list: no radii given");
      r_list = rs;
    } else if (key == "theta_min") {
      theta_min = parse_angle(value, key);
    } else if (key == "theta_max") {
      theta_max = parse_angle(value, key);
    } else if (key == "theta_steps") {
      theta_steps = static_cast<int>(parse_int(value, key));
    } else if (key == "phi_steps") {
      phi_steps = static_cast<int>(parse_int(value, key));
    } else if (key == "apex_steps") {
      apex_steps = static_cast<int>(parse_int(value, key));
    } else if (key == "fit_theta_min") {
      fit_theta_min = parse_angle(value, key);
    } else if (key == "fit_theta_max") {
      fit_theta_max = parse_angle(value, key);
    } else if (key == "quad_tol") {
      quad_tol = parse_double(value, key);
    } else if (key == "rank_tol") {
      rank_tol = parse_double(value, key);
    } else if (key == "seed") {
      seed = parse_u64(value, key);
    } else if (key == "output_dir") {
      output_dir = trim(value);
    } else {
      throw UsageError("unknown config key '" + key +
                       "' (expected one of: r_list, theta_min, theta_max, theta_steps, "
                       "phi_steps, apex_steps, fit_theta_min, fit_theta_max, quad_tol, "
                       "rank_tol, seed, output_dir)");
    }
  }

  // "min:max:steps" with angle syntax for min/max.
  void apply_theta_grid(const std::string& value) {
    const std::vector<std::string> parts = split(value, ':');
    if (parts.size() != 3) throw UsageError("theta-grid: expected min:max:steps");
    theta_min = parse_angle(parts[0], "theta-grid min");
    theta_max = parse_angle(parts[1], "theta-grid max");
    theta_steps = static_cast<int>(parse_int(parts[2], "theta-grid steps"));
  }

  std::vector<double> theta_grid() const {
    if (theta_steps < 1) throw UsageError("theta_steps must be >= 1");
    std::vector<double> grid(static_cast<size_t>(theta_steps));
    for (int i = 0; i < theta_steps; ++i)
      grid[static_cast<size_t>(i)] =
          theta_steps == 1 ? theta_min
                           : theta_min + (theta_max - theta_min) * i / (theta_steps - 1);
    return grid;
  }
};

// Round-trip-exact double text, for the canonical form that gets hashed.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV cell: 12 significant digits; NaN normalized to "nan" so output bytes
// never depend on the sign bit an operation happened to produce.
inline std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// Canonical serialization of everything that determines output bytes.
// output_dir and thread count are deliberately absent: the same experiment
// must land in the same subdirectory wherever it is rooted and however it
// is parallelized.  `extras` carries subcommand-specific inputs.
inline std::string canonical_config(const RunConfig& c,
                                    const std::vector<std::pair<std::string, std::string>>& extras) {
  std::string s;
  s += "r_list=";
  for (size_t i = 0; i < c.r_list.size(); ++i) {
    if (i) s += ',';
    s += fmt17(c.r_list[i]);
  }
  s += '\n';
  s += "theta_min=" + fmt17(c.theta_min) + '\n';
  s += "theta_max=" + fmt17(c.theta_max) + '\n';
  s += "theta_steps=" + std::to_string(c.theta_steps) + '\n';
  s += "phi_steps=" + std::to_string(c.phi_steps) + '\n';
  s += "apex_steps=" + std::to_string(c.apex_steps) + '\n';
  s += "fit_theta_min=" + fmt17(c.fit_theta_min) + '\n';
  s += "fit_theta_max=" + fmt17(c.fit_theta_max) + '\n';
  s += "quad_tol=" + fmt17(c.quad_tol) + '\n';
  s += "rank_tol=" + fmt17(c.rank_tol) + '\n';
  s += "seed=" + std::to_string(c.seed) + '\n';
  for (const auto& [k, v] : extras) s += k + '=' + v + '\n';
  return s;
}

inline std::string hash_hex(const std::string& canonical) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

}  // namespace cli

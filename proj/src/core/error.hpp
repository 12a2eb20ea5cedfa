#pragma once

#include <stdexcept>
#include <string>

namespace cornercount {

// Error taxonomy shared by the C++ core and mirrored by the C API layer.
enum class Errc {
  ok = 0,
  invalid_argument = 1,  // malformed input (non-finite, out of range, null)
  domain = 2,            // input outside a function's mathematical domain
  rank_deficient = 3,    // degenerate least-squares system
  capacity = 4,          // requested work exceeds the configured budget
  numeric = 5,           // a numerical routine failed to converge
  io = 6,                // file or serialization failure
  internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace cornercount

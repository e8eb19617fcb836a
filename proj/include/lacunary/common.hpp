#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lacunary {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kArtifactVersion = 1;

// Bad arguments or malformed input data.  CLI exit code 2.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested value does not fit the 64-bit unsigned term capacity.
// CLI exit code 3.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search exhausted its combinatorial budget; partial results only.
// CLI exit code 3.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a*b with overflow check; throws capacity_error with context on overflow.
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b,
                                 const char* what) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw capacity_error(std::string(what) + ": product exceeds 64-bit capacity");
  return r;
}

}  // namespace lacunary

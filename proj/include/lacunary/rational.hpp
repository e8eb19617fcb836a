#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace lacunary {

// Exact nonnegative ratio of 64-bit integers; used for consecutive-term
// ratios, where cross multiplication fits in 128 bits.
struct Ratio {
  std::uint64_t num{0};
  std::uint64_t den{1};

  static Ratio reduced(std::uint64_t n, std::uint64_t d) {
    std::uint64_t g = std::gcd(n, d);
    if (g == 0) g = 1;
    return Ratio{n / g, d / g};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den ==
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
};

}  // namespace lacunary

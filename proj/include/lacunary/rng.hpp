#pragma once

#include <cstdint>

namespace lacunary {

// Counter-based generator built on the splitmix64 mixer.  Every draw is a
// pure function of (seed, stream, index), so any figure can be reproduced
// bit-for-bit from its recorded seed regardless of evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ stream)) {}

  std::uint64_t at(std::uint64_t index) const {
    return mix(key_ + index * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform on [0, bound); unbiased via rejection.  Each logical index owns
  // a block of 256 raw draws so rejections never shift later indices.
  std::uint64_t bounded_at(std::uint64_t index, std::uint64_t bound) const {
    std::uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
    for (std::uint64_t attempt = 0;; ++attempt) {
      std::uint64_t v = at(index * 256 + attempt);
      if (v >= threshold) return v % bound;
    }
  }

  // Uniform on the open interval (0,1), 53-bit resolution.
  double uniform01_at(std::uint64_t index) const {
    return (static_cast<double>(at(index) >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

}  // namespace lacunary

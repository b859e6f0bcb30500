// SplitMix64: the deterministic, splittable 64-bit generator used for every
// seeded sampling routine (chaos game, random samples).
#pragma once

#include <cstdint>

namespace saffine {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by multiply-high reduction.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Independent stream derived from this one.
  SplitMix64 split() { return SplitMix64(next() ^ 0x6a09e667f3bcc909ULL); }

 private:
  std::uint64_t state_;
};

}  // namespace saffine

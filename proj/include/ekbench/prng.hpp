#pragma once

#include <cstdint>

#include "ekbench/rational.hpp"

namespace ekbench {

// Seeded 64-bit generator with the splitmix64 mixing function, chosen so
// reports are reproducible from the seed alone in any implementation:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB; output z ^ z>>31
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection, so the result is exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next();
    while (x >= bound) x = next();
    return x % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Exact rational lo + j*(hi-lo)/den with j uniform in {0, ..., den}.
  Rat rat_between(const Rat& lo, const Rat& hi, std::uint64_t den) {
    Rat j(static_cast<unsigned long>(below(den + 1)));
    Rat width = hi - lo;
    Rat denr(static_cast<unsigned long>(den));
    return lo + j * width / denr;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ekbench

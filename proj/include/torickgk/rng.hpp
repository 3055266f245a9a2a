// torickgk — deterministic random numbers for sampling suites.
//
// std::uniform_real_distribution is not required to produce identical streams
// across standard library implementations, so doubles are derived from the
// raw mt19937_64 bit stream directly. Same seed ⇒ same samples, everywhere.
#pragma once

#include <cstdint>
#include <random>

namespace torickgk {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1): top 53 bits of the generator output.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  int uniform_int(int n) { return static_cast<int>(uniform() * n) % n; }

private:
  std::mt19937_64 eng_;
};

}  // namespace torickgk

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace fkmc {

// The one pseudo-random stream owned by a simulation run.
//
// Only the raw 64-bit output of std::mt19937_64 is used (its sequence is fixed
// by the standard); every derived variate is computed here rather than through
// the <random> distributions, whose algorithms are implementation-defined.
// That keeps (config, seed) -> log reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  /// Uniform on (0, 1], 53-bit resolution. Never returns 0, so -ln(u) is finite.
  double uniform() {
    return static_cast<double>((raw() >> 11) + 1) * 0x1.0p-53;
  }

  /// Box-Muller with no cached second variate: always consumes two uniforms.
  double normal(double mean, double stddev) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + stddev * z;
  }

  /// Uniform integer in [0, n). Rejection sampling, so no modulo bias. n > 0.
  std::uint64_t index(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = raw();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fkmc

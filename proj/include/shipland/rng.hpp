#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace shipland {

// Seeded random stream. Distributions are hand-rolled on top of the
// standard-specified mt19937_64 output so that traces are reproducible
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Derives an independent stream for a named substream (wind, noise, ...)
  // so adding one consumer never shifts the samples seen by another.
  static Rng substream(std::uint64_t seed, std::uint64_t stream_id) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

  // Uniform on [0, 1).
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on the open interval (-1, 1).
  double uniform_signed_unit() {
    double u;
    do {
      u = 2.0 * uniform01() - 1.0;
    } while (u <= -1.0);
    return u;
  }

  // +1 or -1 with equal probability.
  double sign() { return engine_() & 1u ? 1.0 : -1.0; }

  // Zero-mean Gaussian with the given variance (Box-Muller).
  double gaussian(double variance) {
    if (variance <= 0.0) return 0.0;
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * std::sqrt(variance);
    }
    double u1;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a) * std::sqrt(variance);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace shipland

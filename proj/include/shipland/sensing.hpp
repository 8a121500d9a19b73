#pragma once

#include "shipland/rng.hpp"

namespace shipland {

struct NoiseParams {
  double variance = 0.0;     // signal units squared
  double sample_time = 0.01; // s, hold interval between redraws

  void validate() const;
};

// Band-limited measurement noise: a zero-mean Gaussian sample redrawn at
// multiples of sample_time and held in between.
class HeldNoise {
 public:
  // Returns true_value plus the current noise sample.
  double apply(double true_value, double t, const NoiseParams& params,
               Rng& rng);

 private:
  double current_ = 0.0;
  long last_sample_ = -1;
};

// Exact zero-order-hold discretization of the first-order low-pass
// omega_c / (s + omega_c).
class LowPassFilter {
 public:
  explicit LowPassFilter(double cutoff, double initial = 0.0)
      : cutoff_(cutoff), y_(initial) {}

  // Primes the state (used to start at the first measurement instead of 0).
  void reset(double y0) { y_ = y0; }

  double step(double x, double dt) {
    const double alpha = std::exp(-cutoff_ * dt);
    y_ = alpha * y_ + (1.0 - alpha) * x;
    return y_;
  }

  double value() const { return y_; }
  double cutoff() const { return cutoff_; }

 private:
  double cutoff_;
  double y_;
};

}  // namespace shipland

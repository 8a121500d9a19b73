#include "shipland/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace shipland {

void NoiseParams::validate() const {
  if (variance < 0.0) throw std::invalid_argument("noise: variance must be >= 0");
  if (sample_time <= 0.0)
    throw std::invalid_argument("noise: sample_time must be > 0");
}

double HeldNoise::apply(double true_value, double t, const NoiseParams& params,
                        Rng& rng) {
  if (params.variance <= 0.0) return true_value;
  const long index =
      static_cast<long>(std::floor(t / params.sample_time + 1e-9));
  if (index > last_sample_) {
    last_sample_ = index;
    current_ = rng.gaussian(params.variance);
  }
  return true_value + current_;
}

}  // namespace shipland

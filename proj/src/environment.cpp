#include "shipland/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace shipland {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

void WindParams::validate() const {
  if (wind_min < 0.0 || wind_min > wind_max)
    throw std::invalid_argument("wind: need 0 <= wind_min <= wind_max");
  if (gust_sample_time <= 0.0)
    throw std::invalid_argument("wind: gust_sample_time must be > 0");
}

void ShipParams::validate() const {
  if (wave_amplitude < 0.0)
    throw std::invalid_argument("ship: wave_amplitude must be >= 0");
  if (wave_frequency <= 0.0)
    throw std::invalid_argument("ship: wave_frequency must be > 0");
  if (speed < 0.0) throw std::invalid_argument("ship: speed must be >= 0");
}

WindState init_wind(const WindParams& params, double drag_constant, Rng& rng) {
  WindState ws;
  ws.drag_constant = drag_constant;
  double* axes[] = {&ws.steady.x, &ws.steady.y, &ws.steady.z};
  for (double* axis : axes) {
    const double magnitude = rng.uniform(params.wind_min, params.wind_max);
    *axis = magnitude * rng.sign();
  }
  return ws;
}

void update_gust(WindState& state, double t, const WindParams& params,
                 Rng& rng) {
  const long index = static_cast<long>(
      std::floor(t / params.gust_sample_time + 1e-9));
  if (index <= state.last_gust_sample) return;
  state.last_gust_sample = index;
  state.gust.x = state.steady.x / 5.0 * rng.uniform_signed_unit();
  state.gust.y = state.steady.y / 5.0 * rng.uniform_signed_unit();
  state.gust.z = state.steady.z / 5.0 * rng.uniform_signed_unit();
}

Vec3 wind_force(const Vec3& vehicle_velocity, const WindState& wind) {
  const Vec3 w = wind.total();
  auto axis_force = [&wind](double v, double wn) {
    const double rel = v - wn;
    if (rel == 0.0) return 0.0;
    return wind.drag_constant * rel * rel * (rel > 0.0 ? -1.0 : 1.0);
  };
  return {axis_force(vehicle_velocity.x, w.x),
          axis_force(vehicle_velocity.y, w.y),
          axis_force(vehicle_velocity.z, w.z)};
}

ShipState ship_state_at(double t, const ShipParams& params) {
  const double h0 = params.initial_heading_deg * kDegToRad;
  const double rate = params.turn_rate_deg * kDegToRad;
  const double h = h0 + rate * t;

  ShipState s;
  s.heading = h;
  if (rate == 0.0) {
    s.position.x = params.initial_x + params.speed * std::cos(h0) * t;
    s.position.y = params.initial_y + params.speed * std::sin(h0) * t;
  } else {
    // Constant-rate arc: integral of speed * (cos h, sin h).
    const double r = params.speed / rate;
    s.position.x = params.initial_x + r * (std::sin(h) - std::sin(h0));
    s.position.y = params.initial_y - r * (std::cos(h) - std::cos(h0));
  }
  s.velocity.x = params.speed * std::cos(h);
  s.velocity.y = params.speed * std::sin(h);

  const double phase = params.wave_frequency * t + params.wave_phase;
  s.position.z = params.wave_amplitude * std::sin(phase);
  s.velocity.z = params.wave_amplitude * params.wave_frequency * std::cos(phase);
  return s;
}

std::optional<double> next_wave_peak(double t_now, const ShipParams& params) {
  if (params.wave_amplitude <= 0.0) return std::nullopt;
  const double period = 2.0 * M_PI / params.wave_frequency;
  // First time (possibly negative) with heave phase exactly pi/2.
  const double base = (M_PI / 2.0 - params.wave_phase) / params.wave_frequency;
  const double n = std::floor((t_now - base) / period);
  return base + (n + 1.0) * period;
}

}  // namespace shipland

#pragma once

#include <optional>

#include "shipland/rng.hpp"
#include "shipland/vec3.hpp"

namespace shipland {

struct WindParams {
  double wind_min = 10.0;         // m/s, steady magnitude lower bound
  double wind_max = 20.0;         // m/s, steady magnitude upper bound
  double gust_sample_time = 0.1;  // s, gust hold interval

  void validate() const;
};

// Per-axis steady wind plus a piecewise-constant gust within +/-20% of it.
struct WindState {
  Vec3 steady;
  Vec3 gust;
  double drag_constant = 0.0;   // kg/m, 0.5 * C_d * rho * A
  long last_gust_sample = -1;   // index of the last gust redraw

  Vec3 total() const { return steady + gust; }
};

// Draws the steady wind: per axis, magnitude uniform in [min, max] and an
// independent random sign. Gust starts at zero.
WindState init_wind(const WindParams& params, double drag_constant, Rng& rng);

// Redraws the gust at multiples of gust_sample_time, holding it in between.
// Each axis gust is steady/5 scaled by a fresh uniform sample on (-1, 1).
void update_gust(WindState& state, double t, const WindParams& params,
                 Rng& rng);

// Per-axis quadratic drag on the velocity relative to the wind, acting
// against the relative velocity.
Vec3 wind_force(const Vec3& vehicle_velocity, const WindState& wind);

struct ShipParams {
  double initial_x = 500.0;         // m
  double initial_y = 300.0;         // m
  double initial_heading_deg = 300.0;  // compass deg, 0 = +x, clockwise to +y
  double turn_rate_deg = 2.0;       // deg/s
  double speed = 15.0;              // m/s
  double wave_amplitude = 5.0;      // m
  double wave_frequency = 0.75;     // rad/s
  double wave_phase = 2.2;          // rad

  void validate() const;
};

struct ShipState {
  Vec3 position;   // deck position, m
  Vec3 velocity;   // deck velocity, m/s
  double heading = 0.0;  // rad
};

// Closed-form deck state at time t: constant-rate turning track in the
// horizontal plane, sinusoidal heave in z, velocities are exact derivatives.
ShipState ship_state_at(double t, const ShipParams& params);

// Smallest t > t_now at which the deck is at the top of a wave (heave phase
// congruent to pi/2). Empty when the sea is flat (amplitude == 0).
std::optional<double> next_wave_peak(double t_now, const ShipParams& params);

}  // namespace shipland

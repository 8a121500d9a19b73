#include "shipland/guidance.hpp"

#include <cmath>
#include <stdexcept>

namespace shipland {

const char* to_string(MissionPhase phase) {
  switch (phase) {
    case MissionPhase::Approach: return "approach";
    case MissionPhase::Hold: return "hold";
    case MissionPhase::Descending: return "descending";
    case MissionPhase::TouchedDown: return "touched_down";
    case MissionPhase::TimedOut: return "timed_out";
  }
  return "unknown";
}

void LandingParams::validate() const {
  if (holding_altitude <= 0.0)
    throw std::invalid_argument("landing: holding_altitude must be > 0");
  if (position_tolerance <= 0.0)
    throw std::invalid_argument("landing: position_tolerance must be > 0");
  if (target_relative_velocity <= 0.0)
    throw std::invalid_argument("landing: target_relative_velocity must be > 0");
  if (timeout <= 0.0) throw std::invalid_argument("landing: timeout must be > 0");
}

ReferencePoint lissajous_reference(double t, const LissajousConfig& c) {
  ReferencePoint r;
  r.position = {c.amplitude_x * std::sin(c.rate_x * t),
                c.amplitude_y * std::sin(c.rate_y * t + c.phase), c.altitude};
  r.velocity = {c.amplitude_x * c.rate_x * std::cos(c.rate_x * t),
                c.amplitude_y * c.rate_y * std::cos(c.rate_y * t + c.phase),
                0.0};
  return r;
}

ReferencePoint spiral_reference(double t, const SpiralConfig& c) {
  ReferencePoint r;
  const double a = c.angular_rate * t;
  r.position = {c.radius * std::cos(a), c.radius * std::sin(a),
                c.base_altitude + c.climb_rate * t};
  r.velocity = {-c.radius * c.angular_rate * std::sin(a),
                c.radius * c.angular_rate * std::cos(a), c.climb_rate};
  return r;
}

DescentPlan plan_descent(double t_now, const LandingParams& landing,
                         const ShipParams& ship) {
  DescentPlan plan;
  plan.descent_rate = landing.target_relative_velocity;
  const double duration =
      (landing.holding_altitude - ship.wave_amplitude) / plan.descent_rate;

  const auto first_peak = next_wave_peak(t_now, ship);
  if (!first_peak) {
    // Flat sea: nothing to time against, descend immediately.
    plan.t_start = t_now;
    plan.t_touch = t_now + landing.holding_altitude / plan.descent_rate;
    return plan;
  }

  const double period = 2.0 * M_PI / ship.wave_frequency;
  double t_touch = *first_peak;
  while (t_touch - t_now < duration) t_touch += period;
  plan.t_touch = t_touch;
  plan.t_start = t_touch - duration;
  return plan;
}

ReferencePoint ship_track_reference(double t, const ShipState& ship,
                                    MissionPhase phase,
                                    const LandingParams& landing,
                                    const DescentPlan* plan) {
  ReferencePoint r;
  r.position.x = ship.position.x;
  r.position.y = ship.position.y;
  r.position.z = landing.holding_altitude;
  r.heading = ship.heading;
  r.velocity = {ship.velocity.x, ship.velocity.y, 0.0};

  if (phase == MissionPhase::Descending && plan != nullptr && t >= plan->t_start) {
    r.position.z = landing.holding_altitude -
                   plan->descent_rate * (t - plan->t_start);
    r.velocity.z = -plan->descent_rate;
  }
  return r;
}

std::optional<TouchdownRecord> detect_touchdown(const VehicleState& vehicle,
                                                const ShipState& ship,
                                                double t, double tolerance) {
  const Vec3 offset = vehicle.position - ship.position;
  if (vehicle.position.z > ship.position.z) return std::nullopt;
  if (offset.horizontal_norm() >= tolerance) return std::nullopt;

  TouchdownRecord rec;
  rec.time = t;
  rec.horizontal_error = offset.horizontal_norm();
  rec.position_error_3d = offset.norm();
  rec.relative_velocity = (vehicle.velocity - ship.velocity).norm();
  return rec;
}

MissionPhase LandingSequencer::update(double t, const Vec3& measured_position,
                                      const ShipState& ship,
                                      const LandingParams& landing,
                                      const ShipParams& ship_params,
                                      double measurement_lag) {
  if (phase_ == MissionPhase::TouchedDown || phase_ == MissionPhase::TimedOut)
    return phase_;
  if (t >= landing.timeout) {
    phase_ = MissionPhase::TimedOut;
    return phase_;
  }

  const ReferencePoint hold_ref =
      ship_track_reference(t, ship, MissionPhase::Hold, landing, nullptr);
  const Vec3 err = measured_position -
                   (hold_ref.position - hold_ref.velocity * measurement_lag);

  switch (phase_) {
    case MissionPhase::Approach:
      if (err.norm() < landing.position_tolerance) {
        phase_ = MissionPhase::Hold;
        plan_ = plan_descent(t, landing, ship_params);
      }
      break;
    case MissionPhase::Hold:
      if (!plan_) plan_ = plan_descent(t, landing, ship_params);
      if (t >= plan_->t_start) phase_ = MissionPhase::Descending;
      break;
    case MissionPhase::Descending:
      // Abort and replan if horizontal alignment is lost.
      if (err.horizontal_norm() > 2.0 * landing.position_tolerance) {
        phase_ = MissionPhase::Hold;
        plan_ = plan_descent(t, landing, ship_params);
      }
      break;
    default:
      break;
  }
  return phase_;
}

bool LandingSequencer::check_touchdown(const VehicleState& vehicle,
                                       const ShipState& ship, double t,
                                       const LandingParams& landing) {
  if (phase_ != MissionPhase::Descending) return false;
  auto rec = detect_touchdown(vehicle, ship, t, landing.position_tolerance);
  if (!rec) return false;
  touchdown_ = rec;
  phase_ = MissionPhase::TouchedDown;
  frozen_ = ship_track_reference(t, ship, MissionPhase::Hold, landing, nullptr);
  frozen_.position = vehicle.position;
  frozen_.velocity = {};
  return true;
}

ReferencePoint LandingSequencer::reference(double t, const ShipState& ship,
                                           const LandingParams& landing) const {
  if (phase_ == MissionPhase::TouchedDown) return frozen_;
  return ship_track_reference(t, ship, phase_, landing,
                              plan_ ? &*plan_ : nullptr);
}

}  // namespace shipland

#pragma once

#include <optional>

#include "shipland/environment.hpp"
#include "shipland/vec3.hpp"
#include "shipland/vehicle.hpp"

namespace shipland {

enum class MissionPhase { Approach, Hold, Descending, TouchedDown, TimedOut };

const char* to_string(MissionPhase phase);

struct LandingParams {
  double holding_altitude = 20.0;         // m above mean deck height
  double position_tolerance = 1.0;        // m
  double target_relative_velocity = 1.0;  // m/s closure rate at contact
  double timeout = 600.0;                 // s

  void validate() const;
};

struct ReferencePoint {
  Vec3 position;
  double heading = 0.0;  // rad
  Vec3 velocity;         // informational, logged only
};

struct LissajousConfig {
  double amplitude_x = 50.0;  // m
  double amplitude_y = 50.0;  // m
  double rate_x = 0.05;       // rad/s
  double rate_y = 0.1;        // rad/s
  double phase = M_PI / 2.0;  // rad
  double altitude = 20.0;     // m
};

struct SpiralConfig {
  double radius = 50.0;        // m
  double angular_rate = 0.05;  // rad/s
  double base_altitude = 10.0; // m
  double climb_rate = 0.1;     // m/s
};

struct HoverConfig {
  Vec3 point{0.0, 0.0, 20.0};
};

ReferencePoint lissajous_reference(double t, const LissajousConfig& config);
ReferencePoint spiral_reference(double t, const SpiralConfig& config);

// Timing for a constant-rate descent that meets the deck at a wave peak.
struct DescentPlan {
  double t_start = 0.0;
  double t_touch = 0.0;
  double descent_rate = 0.0;  // m/s, positive down
};

// Picks the earliest wave peak far enough away to fit a full-rate descent
// from holding altitude down to the peak height. Falls back to an immediate
// descent on a flat sea.
DescentPlan plan_descent(double t_now, const LandingParams& landing,
                         const ShipParams& ship);

// Reference above (or descending onto) the moving deck. During Descending
// the altitude follows the planned ramp from t_start.
ReferencePoint ship_track_reference(double t, const ShipState& ship,
                                    MissionPhase phase,
                                    const LandingParams& landing,
                                    const DescentPlan* plan);

struct TouchdownRecord {
  double time = 0.0;                // s
  double horizontal_error = 0.0;    // m
  double position_error_3d = 0.0;   // m
  double relative_velocity = 0.0;   // m/s, |vehicle velocity - deck velocity|
};

// Contact test: vehicle at or below the deck while horizontally aligned.
std::optional<TouchdownRecord> detect_touchdown(const VehicleState& vehicle,
                                                const ShipState& ship,
                                                double t, double tolerance);

// Landing-phase state machine. Owns the current phase, the descent plan and
// the touchdown record; advanced once per simulation step.
class LandingSequencer {
 public:
  MissionPhase phase() const { return phase_; }
  const std::optional<DescentPlan>& plan() const { return plan_; }
  const std::optional<TouchdownRecord>& touchdown() const { return touchdown_; }

  // Phase transitions driven by the measured vehicle position. Returns the
  // phase after the update. measurement_lag is the group delay (s) of the
  // position-measurement filter: the filtered measurement of a vehicle moving
  // with the deck sits that long behind the deck, so phase checks compare the
  // measurement against the equally delayed reference.
  MissionPhase update(double t, const Vec3& measured_position,
                      const ShipState& ship, const LandingParams& landing,
                      const ShipParams& ship_params,
                      double measurement_lag = 0.0);

  // Physical contact check against the true state; latches TouchedDown.
  bool check_touchdown(const VehicleState& vehicle, const ShipState& ship,
                       double t, const LandingParams& landing);

  ReferencePoint reference(double t, const ShipState& ship,
                           const LandingParams& landing) const;

 private:
  MissionPhase phase_ = MissionPhase::Approach;
  std::optional<DescentPlan> plan_;
  std::optional<TouchdownRecord> touchdown_;
  ReferencePoint frozen_;  // reference held after touchdown
};

}  // namespace shipland

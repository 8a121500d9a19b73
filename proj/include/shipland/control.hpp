#pragma once

#include "shipland/vec3.hpp"
#include "shipland/vehicle.hpp"

namespace shipland {

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

struct Limits {
  double lo = 0.0;
  double hi = 0.0;

  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
  bool saturates(double v) const { return v < lo || v > hi; }
};

// Where the derivative term gets its slope from. Error mode is the textbook
// form; Measurement mode differentiates the (filtered) measurement instead,
// which avoids kicks when the reference steps. WrappedError is Error with the
// backward difference wrapped to (-pi, pi], for angular channels whose error
// jumps by 2 pi at the wrap seam.
enum class DerivativeMode { Error, Measurement, WrappedError };

// One PID channel with backward-difference derivative and clamping
// anti-windup: the integrator is frozen whenever the unclamped output is
// outside the limits.
class Pid {
 public:
  Pid() = default;
  Pid(const PidGains& gains, DerivativeMode mode)
      : gains_(gains), mode_(mode) {}

  // ref_rate is the known rate of the reference; in Measurement mode the
  // derivative acts on (measurement rate - ref_rate) so a moving setpoint is
  // followed without steady-state lag.
  double step(double error, double measurement, double dt, const Limits& limits,
              double ref_rate = 0.0);

  void reset();
  double integral() const { return integral_; }
  void preload_integral(double value) { integral_ = value; }

 private:
  PidGains gains_;
  DerivativeMode mode_ = DerivativeMode::Error;
  double integral_ = 0.0;
  double prev_error_ = 0.0;
  double prev_measurement_ = 0.0;
  bool primed_ = false;
};

// Actuator and setpoint clamps derived from the vehicle's physical limits.
struct SaturationLimits {
  double tilt_max = M_PI / 4.0;  // rad, on commanded pitch/roll
  Limits thrust;                 // N, [0, 4 K omega_max]
  Limits pitch_roll_torque;      // N m, +/- L K omega_max
  Limits yaw_torque;             // N m, +/- 2 K K_psi omega_max

  static SaturationLimits from(const VehicleParams& p);
};

// Shortest-rotation yaw error in (-pi, pi], congruent to desired - actual
// modulo 2 pi. Any number of prior full rotations on either argument is
// ignored.
double wrap_yaw_error(double yaw_desired, double yaw_actual);

struct ControllerGains {
  PidGains altitude{297.08, 55.6, 389.0};
  PidGains position_x{0.5, 0.05, 0.5};
  PidGains position_y{0.5, 0.05, 0.5};
  PidGains pitch{0.324, 0.0, 0.383};
  PidGains roll{0.324, 0.0, 0.383};
  PidGains yaw{0.00485, 3.83e-5, 0.0518};
};

struct ControllerConfig {
  ControllerGains gains;
  // Flips the sign of the roll setpoint mapping; escape hatch in case the
  // chosen dynamics signs disagree with the mapping as printed.
  bool invert_roll_mapping = false;
  // Starts the altitude integrator at hover trim to suppress the initial
  // altitude sag. Off by default.
  bool preload_hover_trim = false;
};

// Filtered measurements entering the controller.
struct Measurement {
  Vec3 position;
  double pitch = 0.0;
  double roll = 0.0;
  double yaw = 0.0;
};

// The cascade: altitude PID -> thrust; horizontal PIDs -> tilt setpoints
// (rotated into the body yaw frame, clamped to +/- tilt_max); attitude PDs ->
// torques; yaw PID on the wrapped error. All outputs are saturated.
class FlightController {
 public:
  FlightController(const ControllerConfig& config, const SaturationLimits& limits,
                   const VehicleParams& vehicle);

  BodyCommand update(const Measurement& meas, const Vec3& ref_position,
                     double ref_heading, const Vec3& ref_velocity, double dt);
  BodyCommand update(const Measurement& meas, const Vec3& ref_position,
                     double ref_heading, double dt) {
    return update(meas, ref_position, ref_heading, Vec3{}, dt);
  }

  // Intermediate setpoints from the last update, for trace logging.
  double last_pitch_setpoint() const { return pitch_setpoint_; }
  double last_roll_setpoint() const { return roll_setpoint_; }

 private:
  ControllerConfig config_;
  SaturationLimits limits_;
  Pid altitude_;
  Pid position_x_;
  Pid position_y_;
  Pid pitch_;
  Pid roll_;
  Pid yaw_;
  double pitch_setpoint_ = 0.0;
  double roll_setpoint_ = 0.0;
};

}  // namespace shipland

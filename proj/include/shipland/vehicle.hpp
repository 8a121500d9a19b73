#pragma once

#include <array>

#include "shipland/vec3.hpp"

namespace shipland {

// Physical constants of the quadrotor. Defaults are the reference
// 100 kg heavy-lift configuration.
struct VehicleParams {
  double mass = 100.0;               // kg
  double inertia_pitch = 0.1;        // kg m^2
  double inertia_roll = 0.1;         // kg m^2
  double inertia_yaw = 0.01;         // kg m^2
  double thrust_constant = 1.0;      // N per rad/s (thrust linear in motor speed)
  double torque_constant = 0.5;      // m (propeller torque per unit thrust)
  double rudder_gain = 1.0;          // dimensionless yaw-torque multiplier
  double motor_speed_max = 500.0;    // rad/s
  double arm_length = 0.75;          // m
  double cross_section_area = 1.0;   // m^2
  double drag_coefficient = 0.5;     // dimensionless
  double air_density = 1.225;        // kg/m^3
  double gravity = 9.81;             // m/s^2

  double hover_thrust() const { return mass * gravity; }
  double drag_constant() const {
    return 0.5 * drag_coefficient * air_density * cross_section_area;
  }

  // Throws std::invalid_argument listing every violated constraint.
  void validate() const;
};

// World-frame kinematic state: position, velocity, Euler angles
// (pitch tilts toward +x, roll toward -y, yaw about z), angular rates.
struct VehicleState {
  Vec3 position;
  Vec3 velocity;
  double pitch = 0.0;       // rad
  double roll = 0.0;        // rad
  double yaw = 0.0;         // rad
  double pitch_rate = 0.0;  // rad/s
  double roll_rate = 0.0;   // rad/s
  double yaw_rate = 0.0;    // rad/s
};

// Net body-axis demands produced by the controller.
struct BodyCommand {
  double thrust = 0.0;        // N, along body z
  double pitch_torque = 0.0;  // N m
  double roll_torque = 0.0;   // N m
  double yaw_torque = 0.0;    // N m
};

struct MotorSpeeds {
  std::array<double, 4> speed{};  // rad/s
};

struct MixResult {
  MotorSpeeds speeds;
  bool clamped = false;  // true when any speed hit [0, motor_speed_max]
};

// Motor speeds -> net thrust/torques. Thrust sums all motors, pitch torque
// pairs motors 1/2, roll torque pairs 3/4, yaw torque opposes the pairs.
BodyCommand mix_forward(const MotorSpeeds& speeds, const VehicleParams& p);

// Exact linear inverse of mix_forward, then per-motor clamping to
// [0, motor_speed_max]. Clamping is silent but flagged for the trace.
MixResult mix_inverse(const BodyCommand& cmd, const VehicleParams& p);

// World-frame translational acceleration from tilted thrust, gravity and an
// externally computed wind force.
Vec3 translational_accel(const VehicleState& state, double thrust,
                         const Vec3& wind_force, const VehicleParams& p);

// Angular accelerations (pitch, roll, yaw); yaw torque is scaled by the
// rudder gain.
Vec3 rotational_accel(const BodyCommand& cmd, const VehicleParams& p);

// Advances the 12-value state one fixed step with classical RK4 on the
// coupled translational/rotational dynamics. The command and wind force are
// held constant across the step.
VehicleState step(const VehicleState& state, const BodyCommand& cmd,
                  const Vec3& wind_force, double dt, const VehicleParams& p);

// True when any state component exceeds the sanity bound.
bool diverged(const VehicleState& state, double bound = 1e6);

}  // namespace shipland

#include "shipland/control.hpp"

#include <cmath>

namespace shipland {

double Pid::step(double error, double measurement, double dt,
                 const Limits& limits, double ref_rate) {
  double derivative = 0.0;
  if (primed_) {
    switch (mode_) {
      case DerivativeMode::Error:
        derivative = (error - prev_error_) / dt;
        break;
      case DerivativeMode::WrappedError:
        derivative = wrap_yaw_error(error, prev_error_) / dt;
        break;
      case DerivativeMode::Measurement:
        derivative = ref_rate - (measurement - prev_measurement_) / dt;
        break;
    }
  }
  prev_error_ = error;
  prev_measurement_ = measurement;
  primed_ = true;

  const double candidate_integral = integral_ + error * dt;
  const double output = gains_.kp * error + gains_.ki * candidate_integral +
                        gains_.kd * derivative;
  if (limits.saturates(output)) {
    // Anti-windup: keep the integrator where it was.
    return limits.clamp(gains_.kp * error + gains_.ki * integral_ +
                        gains_.kd * derivative);
  }
  integral_ = candidate_integral;
  return output;
}

void Pid::reset() {
  integral_ = 0.0;
  prev_error_ = 0.0;
  prev_measurement_ = 0.0;
  primed_ = false;
}

SaturationLimits SaturationLimits::from(const VehicleParams& p) {
  SaturationLimits s;
  const double K = p.thrust_constant;
  s.thrust = {0.0, 4.0 * K * p.motor_speed_max};
  const double torque_max = p.arm_length * K * p.motor_speed_max;
  s.pitch_roll_torque = {-torque_max, torque_max};
  const double yaw_max = 2.0 * K * p.torque_constant * p.motor_speed_max;
  s.yaw_torque = {-yaw_max, yaw_max};
  return s;
}

double wrap_yaw_error(double yaw_desired, double yaw_actual) {
  double e = std::fmod(yaw_desired - yaw_actual, 2.0 * M_PI);
  if (e <= -M_PI) e += 2.0 * M_PI;
  else if (e > M_PI) e -= 2.0 * M_PI;
  return e;
}

FlightController::FlightController(const ControllerConfig& config,
                                   const SaturationLimits& limits,
                                   const VehicleParams& vehicle)
    : config_(config),
      limits_(limits),
      altitude_(config.gains.altitude, DerivativeMode::Measurement),
      position_x_(config.gains.position_x, DerivativeMode::Measurement),
      position_y_(config.gains.position_y, DerivativeMode::Measurement),
      pitch_(config.gains.pitch, DerivativeMode::Error),
      roll_(config.gains.roll, DerivativeMode::Error),
      yaw_(config.gains.yaw, DerivativeMode::WrappedError) {
  if (config.preload_hover_trim && config.gains.altitude.ki > 0.0) {
    altitude_.preload_integral(vehicle.hover_thrust() /
                               config.gains.altitude.ki);
  }
}

BodyCommand FlightController::update(const Measurement& meas,
                                     const Vec3& ref_position,
                                     double ref_heading,
                                     const Vec3& ref_velocity, double dt) {
  const Limits tilt{-limits_.tilt_max, limits_.tilt_max};

  // Altitude -> body thrust, then into the world frame via the tilt.
  const double body_thrust =
      altitude_.step(ref_position.z - meas.position.z, meas.position.z, dt,
                     limits_.thrust, ref_velocity.z);
  // The divisor cannot reach cos^2(pi/4) = 0.5 while the setpoint clamps
  // hold; floored anyway.
  const double tilt_cos =
      std::max(std::cos(meas.pitch) * std::cos(meas.roll), 0.5);

  // Horizontal position -> tilt setpoints in the body yaw frame.
  const double ux = position_x_.step(ref_position.x - meas.position.x,
                                     meas.position.x, dt, tilt, ref_velocity.x);
  const double uy = position_y_.step(ref_position.y - meas.position.y,
                                     meas.position.y, dt, tilt, ref_velocity.y);
  const double cy = std::cos(meas.yaw), sy = std::sin(meas.yaw);
  double pitch_d = ux * cy + uy * sy;
  double roll_d = ux * sy - uy * cy;
  if (config_.invert_roll_mapping) roll_d = -roll_d;
  pitch_setpoint_ = tilt.clamp(pitch_d);
  roll_setpoint_ = tilt.clamp(roll_d);

  BodyCommand cmd;
  cmd.thrust = limits_.thrust.clamp(body_thrust / tilt_cos);
  cmd.pitch_torque = pitch_.step(pitch_setpoint_ - meas.pitch, meas.pitch, dt,
                                 limits_.pitch_roll_torque);
  cmd.roll_torque = roll_.step(roll_setpoint_ - meas.roll, meas.roll, dt,
                               limits_.pitch_roll_torque);
  cmd.yaw_torque = yaw_.step(wrap_yaw_error(ref_heading, meas.yaw), meas.yaw,
                             dt, limits_.yaw_torque);
  return cmd;
}

}  // namespace shipland

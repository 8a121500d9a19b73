#include "shipland/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shipland {

void VehicleParams::validate() const {
  std::ostringstream bad;
  auto require = [&bad](bool ok, const char* what) {
    if (!ok) bad << (bad.tellp() > 0 ? "; " : "") << what;
  };
  require(mass > 0.0, "mass must be > 0");
  require(inertia_pitch > 0.0, "inertia_pitch must be > 0");
  require(inertia_roll > 0.0, "inertia_roll must be > 0");
  require(inertia_yaw > 0.0, "inertia_yaw must be > 0");
  require(thrust_constant > 0.0, "thrust_constant must be > 0");
  require(torque_constant > 0.0, "torque_constant must be > 0");
  require(rudder_gain >= 0.0, "rudder_gain must be >= 0");
  require(motor_speed_max > 0.0, "motor_speed_max must be > 0");
  require(arm_length > 0.0, "arm_length must be > 0");
  require(cross_section_area > 0.0, "cross_section_area must be > 0");
  require(drag_coefficient > 0.0, "drag_coefficient must be > 0");
  require(air_density > 0.0, "air_density must be > 0");
  require(gravity > 0.0, "gravity must be > 0");
  require(4.0 * thrust_constant * motor_speed_max > mass * gravity,
          "hover infeasible: 4*thrust_constant*motor_speed_max <= mass*gravity");
  if (bad.tellp() > 0) throw std::invalid_argument("vehicle: " + bad.str());
}

BodyCommand mix_forward(const MotorSpeeds& s, const VehicleParams& p) {
  const double K = p.thrust_constant;
  const auto& u = s.speed;
  BodyCommand c;
  c.thrust = K * (u[0] + u[1] + u[2] + u[3]);
  c.pitch_torque = K * p.arm_length * (u[0] - u[1]);
  c.roll_torque = K * p.arm_length * (u[2] - u[3]);
  c.yaw_torque = K * p.torque_constant * (u[0] + u[1] - u[2] - u[3]);
  return c;
}

MixResult mix_inverse(const BodyCommand& cmd, const VehicleParams& p) {
  const double K = p.thrust_constant;
  const double a = cmd.thrust / (4.0 * K);
  const double b = cmd.pitch_torque / (2.0 * K * p.arm_length);
  const double c = cmd.roll_torque / (2.0 * K * p.arm_length);
  const double d = cmd.yaw_torque / (4.0 * K * p.torque_constant);

  MixResult r;
  r.speeds.speed = {a + d + b, a + d - b, a - d + c, a - d - c};
  for (double& s : r.speeds.speed) {
    const double clamped = std::clamp(s, 0.0, p.motor_speed_max);
    if (clamped != s) r.clamped = true;
    s = clamped;
  }
  return r;
}

Vec3 translational_accel(const VehicleState& st, double thrust,
                         const Vec3& wind_force, const VehicleParams& p) {
  const double ct = std::cos(st.pitch), stheta = std::sin(st.pitch);
  const double cf = std::cos(st.roll), sf = std::sin(st.roll);
  const double cp = std::cos(st.yaw), sp = std::sin(st.yaw);
  Vec3 a;
  a.x = (thrust * (cf * stheta * cp + sf * sp) + wind_force.x) / p.mass;
  a.y = (thrust * (cf * stheta * sp - sf * cp) + wind_force.y) / p.mass;
  a.z = (thrust * (cf * ct) - p.mass * p.gravity + wind_force.z) / p.mass;
  return a;
}

Vec3 rotational_accel(const BodyCommand& cmd, const VehicleParams& p) {
  return {cmd.pitch_torque / p.inertia_pitch, cmd.roll_torque / p.inertia_roll,
          cmd.yaw_torque * p.rudder_gain / p.inertia_yaw};
}

namespace {

struct Derivative {
  Vec3 vel;
  Vec3 acc;
  Vec3 att_rate;
  Vec3 att_acc;
};

Derivative eval(const VehicleState& st, const BodyCommand& cmd,
                const Vec3& wind_force, const VehicleParams& p) {
  Derivative d;
  d.vel = st.velocity;
  d.acc = translational_accel(st, cmd.thrust, wind_force, p);
  d.att_rate = {st.pitch_rate, st.roll_rate, st.yaw_rate};
  d.att_acc = rotational_accel(cmd, p);
  return d;
}

VehicleState advance(const VehicleState& st, const Derivative& d, double h) {
  VehicleState n = st;
  n.position += d.vel * h;
  n.velocity += d.acc * h;
  n.pitch += d.att_rate.x * h;
  n.roll += d.att_rate.y * h;
  n.yaw += d.att_rate.z * h;
  n.pitch_rate += d.att_acc.x * h;
  n.roll_rate += d.att_acc.y * h;
  n.yaw_rate += d.att_acc.z * h;
  return n;
}

}  // namespace

VehicleState step(const VehicleState& st, const BodyCommand& cmd,
                  const Vec3& wind_force, double dt, const VehicleParams& p) {
  const Derivative k1 = eval(st, cmd, wind_force, p);
  const Derivative k2 = eval(advance(st, k1, dt / 2.0), cmd, wind_force, p);
  const Derivative k3 = eval(advance(st, k2, dt / 2.0), cmd, wind_force, p);
  const Derivative k4 = eval(advance(st, k3, dt), cmd, wind_force, p);

  Derivative sum;
  sum.vel = (k1.vel + 2.0 * k2.vel + 2.0 * k3.vel + k4.vel) * (1.0 / 6.0);
  sum.acc = (k1.acc + 2.0 * k2.acc + 2.0 * k3.acc + k4.acc) * (1.0 / 6.0);
  sum.att_rate =
      (k1.att_rate + 2.0 * k2.att_rate + 2.0 * k3.att_rate + k4.att_rate) *
      (1.0 / 6.0);
  sum.att_acc =
      (k1.att_acc + 2.0 * k2.att_acc + 2.0 * k3.att_acc + k4.att_acc) *
      (1.0 / 6.0);
  return advance(st, sum, dt);
}

bool diverged(const VehicleState& st, double bound) {
  const double vals[] = {st.position.x, st.position.y, st.position.z,
                         st.velocity.x, st.velocity.y, st.velocity.z,
                         st.pitch,      st.roll,       st.yaw,
                         st.pitch_rate, st.roll_rate,  st.yaw_rate};
  for (double v : vals) {
    if (!std::isfinite(v) || std::abs(v) > bound) return true;
  }
  return false;
}

}  // namespace shipland

#include "shipland/simkit.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>

namespace shipland {

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Hover: return "hover";
    case ScenarioKind::Lissajous: return "lissajous";
    case ScenarioKind::Spiral: return "spiral";
    case ScenarioKind::ShipLanding: return "ship_landing";
  }
  return "unknown";
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::Landed: return "landed";
    case RunStatus::TimedOut: return "timed_out";
    case RunStatus::Diverged: return "diverged";
  }
  return "unknown";
}

void ScenarioConfig::validate() const {
  if (dt <= 0.0) throw std::invalid_argument("scenario: dt must be > 0");
  if (duration < dt)
    throw std::invalid_argument("scenario: duration must be >= dt");
  if (filter_cutoff_translation <= 0.0 || filter_cutoff_rotation <= 0.0)
    throw std::invalid_argument("scenario: filter cut-offs must be > 0");
  if (tail_fraction <= 0.0 || tail_fraction > 1.0)
    throw std::invalid_argument("scenario: tail_fraction must be in (0, 1]");
  if (divergence_bound <= 0.0)
    throw std::invalid_argument("scenario: divergence_bound must be > 0");
  vehicle.validate();
  if (wind_enabled) wind.validate();
  translation_noise.validate();
  rotation_noise.validate();
  ship.validate();
  landing.validate();
}

namespace {

struct TailStats {
  double mean = 0.0;
  double max = 0.0;
};

TailStats tail_stats(const std::vector<double>& errors, double tail_fraction) {
  if (errors.empty()) throw std::invalid_argument("metrics: empty trace");
  const std::size_t n = errors.size();
  std::size_t start = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * (1.0 - tail_fraction)));
  if (start >= n) start = n - 1;
  TailStats s;
  for (std::size_t i = start; i < n; ++i) {
    s.mean += errors[i];
    if (errors[i] > s.max) s.max = errors[i];
  }
  s.mean /= static_cast<double>(n - start);
  return s;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  config.validate();

  RunResult result;
  result.metrics.seed = config.seed;
  result.metrics.time_to_land = config.duration;

  Rng wind_rng = Rng::substream(config.seed, 0);
  Rng translation_rng = Rng::substream(config.seed, 1);
  Rng rotation_rng = Rng::substream(config.seed, 2);

  WindState wind;
  if (config.wind_enabled)
    wind = init_wind(config.wind, config.vehicle.drag_constant(), wind_rng);

  HeldNoise noise_x, noise_y, noise_z, noise_pitch, noise_roll, noise_yaw;
  LowPassFilter filter_x(config.filter_cutoff_translation);
  LowPassFilter filter_y(config.filter_cutoff_translation);
  LowPassFilter filter_z(config.filter_cutoff_translation);
  LowPassFilter filter_pitch(config.filter_cutoff_rotation);
  LowPassFilter filter_roll(config.filter_cutoff_rotation);
  LowPassFilter filter_yaw(config.filter_cutoff_rotation);

  const SaturationLimits limits = SaturationLimits::from(config.vehicle);
  FlightController controller(config.controller, limits, config.vehicle);
  LandingSequencer sequencer;

  VehicleState state;
  state.position = config.initial_position;

  const std::size_t steps = static_cast<std::size_t>(
      std::llround(config.duration / config.dt));
  std::vector<double> errors;
  errors.reserve(steps);
  if (options.record_trace) result.trace.reserve(steps);

  const double meas_lag = 1.0 / config.filter_cutoff_translation;
  const bool is_landing = config.kind == ScenarioKind::ShipLanding;
  result.status = is_landing ? RunStatus::TimedOut : RunStatus::Completed;

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * config.dt;
    const ShipState ship = ship_state_at(t, config.ship);
    if (config.wind_enabled) update_gust(wind, t, config.wind, wind_rng);

    Measurement meas;
    meas.position.x =
        noise_x.apply(state.position.x, t, config.translation_noise, translation_rng);
    meas.position.y =
        noise_y.apply(state.position.y, t, config.translation_noise, translation_rng);
    meas.position.z =
        noise_z.apply(state.position.z, t, config.translation_noise, translation_rng);
    meas.pitch = noise_pitch.apply(state.pitch, t, config.rotation_noise, rotation_rng);
    meas.roll = noise_roll.apply(state.roll, t, config.rotation_noise, rotation_rng);
    meas.yaw = noise_yaw.apply(state.yaw, t, config.rotation_noise, rotation_rng);
    if (i == 0) {
      filter_x.reset(meas.position.x);
      filter_y.reset(meas.position.y);
      filter_z.reset(meas.position.z);
      filter_pitch.reset(meas.pitch);
      filter_roll.reset(meas.roll);
      filter_yaw.reset(meas.yaw);
    }
    meas.position.x = filter_x.step(meas.position.x, config.dt);
    meas.position.y = filter_y.step(meas.position.y, config.dt);
    meas.position.z = filter_z.step(meas.position.z, config.dt);
    meas.pitch = filter_pitch.step(meas.pitch, config.dt);
    meas.roll = filter_roll.step(meas.roll, config.dt);
    meas.yaw = filter_yaw.step(meas.yaw, config.dt);

    ReferencePoint ref;
    switch (config.kind) {
      case ScenarioKind::Hover:
        ref.position = config.hover.point;
        break;
      case ScenarioKind::Lissajous:
        ref = lissajous_reference(t, config.lissajous);
        break;
      case ScenarioKind::Spiral:
        ref = spiral_reference(t, config.spiral);
        break;
      case ScenarioKind::ShipLanding:
        sequencer.update(t, meas.position, ship, config.landing, config.ship,
                         meas_lag);
        ref = sequencer.reference(t, ship, config.landing);
        break;
    }

    // The filtered position measurement of a moving vehicle sits one filter
    // time constant behind the true position. Shift the setpoint back by the
    // same amount so the true position lands on the ideal reference; the
    // trace and metrics keep the ideal reference.
    const Vec3 ctrl_position = ref.position - ref.velocity * meas_lag;
    const BodyCommand demanded = controller.update(
        meas, ctrl_position, ref.heading, ref.velocity, config.dt);
    const MixResult mix = mix_inverse(demanded, config.vehicle);
    const BodyCommand actuated = mix_forward(mix.speeds, config.vehicle);
    if (mix.clamped) ++result.metrics.clamp_events;

    const Vec3 force =
        config.wind_enabled ? wind_force(state.velocity, wind) : Vec3{};

    errors.push_back((state.position - ref.position).norm());
    if (options.record_trace) {
      TraceRecord rec;
      rec.t = t;
      rec.state = state;
      rec.measured = meas;
      rec.reference = ref;
      rec.command = actuated;
      rec.motors = mix.speeds;
      rec.wind = config.wind_enabled ? wind.total() : Vec3{};
      rec.ship = ship;
      rec.phase = sequencer.phase();
      rec.motor_clamped = mix.clamped;
      result.trace.push_back(rec);
    }

    if (is_landing && sequencer.phase() == MissionPhase::TimedOut) break;

    state = step(state, actuated, force, config.dt, config.vehicle);

    const double t_next = static_cast<double>(i + 1) * config.dt;
    if (diverged(state, config.divergence_bound) ||
        std::abs(state.pitch) > M_PI / 2.0 || std::abs(state.roll) > M_PI / 2.0) {
      result.status = RunStatus::Diverged;
      result.diverged_step = i;
      break;
    }

    if (is_landing) {
      const ShipState ship_next = ship_state_at(t_next, config.ship);
      if (sequencer.check_touchdown(state, ship_next, t_next, config.landing)) {
        result.status = RunStatus::Landed;
        break;
      }
    }
  }

  const TailStats stats = tail_stats(errors, config.tail_fraction);
  result.metrics.mean_position_error = stats.mean;
  result.metrics.max_position_error = stats.max;
  if (const auto& td = sequencer.touchdown()) {
    result.metrics.landed = true;
    result.metrics.time_to_land = td->time;
    result.metrics.touchdown_horizontal_error = td->horizontal_error;
    result.metrics.touchdown_error_3d = td->position_error_3d;
    result.metrics.touchdown_relative_velocity = td->relative_velocity;
  }
  return result;
}

SummaryMetrics compute_metrics(const std::vector<TraceRecord>& trace,
                               double tail_fraction) {
  std::vector<double> errors;
  errors.reserve(trace.size());
  SummaryMetrics m;
  for (const auto& rec : trace) {
    errors.push_back((rec.state.position - rec.reference.position).norm());
    if (rec.motor_clamped) ++m.clamp_events;
  }
  const TailStats stats = tail_stats(errors, tail_fraction);
  m.mean_position_error = stats.mean;
  m.max_position_error = stats.max;
  return m;
}

std::vector<SweepCell> sweep_filter_cutoff(
    const ScenarioConfig& base, const std::vector<double>& cutoffs_translation,
    const std::vector<double>& cutoffs_rotation) {
  for (double w : cutoffs_translation)
    if (w <= 0.0) throw std::invalid_argument("sweep: cut-offs must be > 0");
  for (double w : cutoffs_rotation)
    if (w <= 0.0) throw std::invalid_argument("sweep: cut-offs must be > 0");

  std::vector<SweepCell> cells;
  cells.reserve(cutoffs_translation.size() * cutoffs_rotation.size());
  for (double wt : cutoffs_translation) {
    for (double wr : cutoffs_rotation) {
      ScenarioConfig cfg = base;
      cfg.kind = ScenarioKind::ShipLanding;
      cfg.filter_cutoff_translation = wt;
      cfg.filter_cutoff_rotation = wr;
      cfg.tail_fraction = 0.10;

      SweepCell cell;
      cell.cutoff_translation = wt;
      cell.cutoff_rotation = wr;
      try {
        const RunResult r = run_scenario(cfg, {.record_trace = false});
        cell.mean_error = r.metrics.mean_position_error;
        cell.time_to_land = r.metrics.time_to_land;
        cell.landed = r.status == RunStatus::Landed;
      } catch (const std::exception&) {
        cell.mean_error = std::numeric_limits<double>::infinity();
        cell.time_to_land = cfg.duration;
      }
      if (!cell.landed) cell.time_to_land = cfg.duration;
      cells.push_back(cell);
    }
  }
  return cells;
}

std::vector<SuiteCell> run_suite(const ScenarioConfig& base) {
  const ScenarioKind kinds[] = {ScenarioKind::Lissajous, ScenarioKind::Spiral,
                                ScenarioKind::Hover};
  std::vector<SuiteCell> cells;
  for (ScenarioKind kind : kinds) {
    for (bool wind : {true, false}) {
      ScenarioConfig cfg = base;
      cfg.kind = kind;
      cfg.wind_enabled = wind;

      SuiteCell cell;
      cell.kind = kind;
      cell.wind = wind;
      const RunResult r = run_scenario(cfg, {.record_trace = false});
      cell.mean_error = r.metrics.mean_position_error;
      cell.status = r.status;
      cells.push_back(cell);
    }
  }
  return cells;
}

namespace {

void write_double(std::FILE* f, double v, bool last = false) {
  std::fprintf(f, "%.17g%c", v, last ? '\n' : ',');
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

std::unique_ptr<std::FILE, FileCloser> open_for_write(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return std::unique_ptr<std::FILE, FileCloser>(f);
}

}  // namespace

void write_trace_csv(const std::vector<TraceRecord>& trace,
                     const std::string& path) {
  auto file = open_for_write(path);
  std::FILE* f = file.get();
  std::fputs(
      "t_s,x_m,y_m,z_m,vx_mps,vy_mps,vz_mps,"
      "pitch_rad,roll_rad,yaw_rad,pitch_rate_radps,roll_rate_radps,yaw_rate_radps,"
      "meas_x_m,meas_y_m,meas_z_m,meas_pitch_rad,meas_roll_rad,meas_yaw_rad,"
      "ref_x_m,ref_y_m,ref_z_m,ref_heading_rad,"
      "thrust_N,pitch_torque_Nm,roll_torque_Nm,yaw_torque_Nm,"
      "motor1_radps,motor2_radps,motor3_radps,motor4_radps,"
      "wind_x_mps,wind_y_mps,wind_z_mps,"
      "ship_x_m,ship_y_m,ship_z_m,ship_vz_mps,ship_heading_rad,"
      "phase,motor_clamped\n",
      f);
  for (const auto& r : trace) {
    write_double(f, r.t);
    write_double(f, r.state.position.x);
    write_double(f, r.state.position.y);
    write_double(f, r.state.position.z);
    write_double(f, r.state.velocity.x);
    write_double(f, r.state.velocity.y);
    write_double(f, r.state.velocity.z);
    write_double(f, r.state.pitch);
    write_double(f, r.state.roll);
    write_double(f, r.state.yaw);
    write_double(f, r.state.pitch_rate);
    write_double(f, r.state.roll_rate);
    write_double(f, r.state.yaw_rate);
    write_double(f, r.measured.position.x);
    write_double(f, r.measured.position.y);
    write_double(f, r.measured.position.z);
    write_double(f, r.measured.pitch);
    write_double(f, r.measured.roll);
    write_double(f, r.measured.yaw);
    write_double(f, r.reference.position.x);
    write_double(f, r.reference.position.y);
    write_double(f, r.reference.position.z);
    write_double(f, r.reference.heading);
    write_double(f, r.command.thrust);
    write_double(f, r.command.pitch_torque);
    write_double(f, r.command.roll_torque);
    write_double(f, r.command.yaw_torque);
    for (double s : r.motors.speed) write_double(f, s);
    write_double(f, r.wind.x);
    write_double(f, r.wind.y);
    write_double(f, r.wind.z);
    write_double(f, r.ship.position.x);
    write_double(f, r.ship.position.y);
    write_double(f, r.ship.position.z);
    write_double(f, r.ship.velocity.z);
    write_double(f, r.ship.heading);
    std::fprintf(f, "%s,%d\n", to_string(r.phase), r.motor_clamped ? 1 : 0);
  }
}

void write_metrics(const SummaryMetrics& m, RunStatus status,
                   const ScenarioConfig& config, const std::string& path) {
  auto file = open_for_write(path);
  std::FILE* f = file.get();
  std::fprintf(f, "scenario = %s\n", to_string(config.kind));
  std::fprintf(f, "status = %s\n", to_string(status));
  std::fprintf(f, "seed = %llu\n", static_cast<unsigned long long>(m.seed));
  std::fprintf(f, "duration_s = %.17g\n", config.duration);
  std::fprintf(f, "dt_s = %.17g\n", config.dt);
  std::fprintf(f, "tail_fraction = %.17g\n", config.tail_fraction);
  std::fprintf(f, "mean_position_error_m = %.17g\n", m.mean_position_error);
  std::fprintf(f, "max_position_error_m = %.17g\n", m.max_position_error);
  std::fprintf(f, "time_to_land_s = %.17g\n", m.time_to_land);
  std::fprintf(f, "landed = %s\n", m.landed ? "true" : "false");
  std::fprintf(f, "touchdown_horizontal_error_m = %.17g\n",
               m.touchdown_horizontal_error);
  std::fprintf(f, "touchdown_error_3d_m = %.17g\n", m.touchdown_error_3d);
  std::fprintf(f, "touchdown_relative_velocity_mps = %.17g\n",
               m.touchdown_relative_velocity);
  std::fprintf(f, "clamp_events = %ld\n", m.clamp_events);
}

void write_sweep_csv(const std::vector<SweepCell>& cells,
                     const std::string& path) {
  auto file = open_for_write(path);
  std::FILE* f = file.get();
  std::fputs(
      "cutoff_translation_radps,cutoff_rotation_radps,mean_error_m,"
      "time_to_land_s,landed\n",
      f);
  for (const auto& c : cells) {
    write_double(f, c.cutoff_translation);
    write_double(f, c.cutoff_rotation);
    write_double(f, c.mean_error);
    write_double(f, c.time_to_land);
    std::fprintf(f, "%d\n", c.landed ? 1 : 0);
  }
}

void write_suite_csv(const std::vector<SuiteCell>& cells,
                     const std::string& path) {
  auto file = open_for_write(path);
  std::FILE* f = file.get();
  std::fputs("scenario,wind,mean_error_m,status\n", f);
  for (const auto& c : cells) {
    std::fprintf(f, "%s,%d,%.17g,%s\n", to_string(c.kind), c.wind ? 1 : 0,
                 c.mean_error, to_string(c.status));
  }
}

}  // namespace shipland

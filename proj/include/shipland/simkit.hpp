#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shipland/control.hpp"
#include "shipland/environment.hpp"
#include "shipland/guidance.hpp"
#include "shipland/sensing.hpp"
#include "shipland/vehicle.hpp"

namespace shipland {

enum class ScenarioKind { Hover, Lissajous, Spiral, ShipLanding };

const char* to_string(ScenarioKind kind);

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::ShipLanding;
  double duration = 600.0;  // s
  double dt = 0.002;        // s
  std::uint64_t seed = 1;

  VehicleParams vehicle;
  Vec3 initial_position;

  bool wind_enabled = true;
  WindParams wind;

  NoiseParams translation_noise{0.001, 0.01};
  NoiseParams rotation_noise{0.0001, 0.01};
  double filter_cutoff_translation = 13.0;  // rad/s
  double filter_cutoff_rotation = 31.0;     // rad/s

  ControllerConfig controller;
  ShipParams ship;
  LandingParams landing;
  LissajousConfig lissajous;
  SpiralConfig spiral;
  HoverConfig hover;

  double tail_fraction = 0.75;     // metrics window, fraction of the run kept
  double divergence_bound = 1e6;

  void validate() const;
};

// One row per simulation step.
struct TraceRecord {
  double t = 0.0;
  VehicleState state;
  Measurement measured;
  ReferencePoint reference;
  BodyCommand command;      // after actuator clamping
  MotorSpeeds motors;
  Vec3 wind;                // m/s, steady + gust
  ShipState ship;
  MissionPhase phase = MissionPhase::Approach;
  bool motor_clamped = false;
};

struct SummaryMetrics {
  double mean_position_error = 0.0;  // m, over the tail window
  double max_position_error = 0.0;   // m, over the tail window
  double time_to_land = 0.0;         // s; equals duration when no touchdown
  bool landed = false;
  double touchdown_horizontal_error = 0.0;  // m
  double touchdown_error_3d = 0.0;          // m
  double touchdown_relative_velocity = 0.0; // m/s
  long clamp_events = 0;
  std::uint64_t seed = 0;
};

enum class RunStatus { Completed, Landed, TimedOut, Diverged };

const char* to_string(RunStatus status);

struct RunResult {
  RunStatus status = RunStatus::Completed;
  std::vector<TraceRecord> trace;  // empty when record_trace is off
  SummaryMetrics metrics;
  std::size_t diverged_step = 0;   // valid when status == Diverged
};

struct RunOptions {
  bool record_trace = true;
};

// Runs one closed-loop scenario: ship/wind update, guidance reference, noisy
// and filtered measurements, controller, mixer with actuator clamps, drag,
// physics step. Deterministic for a given config and seed. Halts at
// touchdown, timeout, end of duration, or divergence.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

// Tail-window error statistics over an existing trace.
SummaryMetrics compute_metrics(const std::vector<TraceRecord>& trace,
                               double tail_fraction);

struct SweepCell {
  double cutoff_translation = 0.0;
  double cutoff_rotation = 0.0;
  double mean_error = 0.0;   // m, final 10% of the run
  double time_to_land = 0.0; // s, duration when the cell failed to land
  bool landed = false;
};

// Landing-scenario grid sweep over the two filter cut-offs; every cell uses
// the base config's seed. Results are ordered translation-major.
std::vector<SweepCell> sweep_filter_cutoff(
    const ScenarioConfig& base, const std::vector<double>& cutoffs_translation,
    const std::vector<double>& cutoffs_rotation);

struct SuiteCell {
  ScenarioKind kind = ScenarioKind::Hover;
  bool wind = false;
  double mean_error = 0.0;  // m, tail window
  RunStatus status = RunStatus::Completed;
};

// Lissajous / spiral / hover, each with and without wind; fixed seeds.
std::vector<SuiteCell> run_suite(const ScenarioConfig& base);

// CSV export, one row per step, units in the header, 17 significant digits.
void write_trace_csv(const std::vector<TraceRecord>& trace,
                     const std::string& path);

// key = value metrics document; includes the seed so runs are replayable.
void write_metrics(const SummaryMetrics& metrics, RunStatus status,
                   const ScenarioConfig& config, const std::string& path);

void write_sweep_csv(const std::vector<SweepCell>& cells,
                     const std::string& path);

void write_suite_csv(const std::vector<SuiteCell>& cells,
                     const std::string& path);

}  // namespace shipland

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shipland/config.hpp"
#include "shipland/simkit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitTimeout = 4;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool has_tail = false;
  double tail_fraction = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("-c,--config", opts.config_path,
                  "Scenario file; omit for the built-in defaults");
  cmd->add_option("-o,--out", opts.out_dir, "Output directory");
  cmd->add_option("--seed", opts.seed, "Override the scenario seed")
      ->each([&opts](const std::string&) { opts.has_seed = true; });
  cmd->add_option("--tail", opts.tail_fraction,
                  "Override the metrics tail-window fraction")
      ->each([&opts](const std::string&) { opts.has_tail = true; });
}

shipland::ScenarioConfig load(const CommonOpts& opts) {
  shipland::ScenarioConfig config;
  if (!opts.config_path.empty())
    config = shipland::parse_config_file(opts.config_path);
  if (opts.has_seed) config.seed = opts.seed;
  if (opts.has_tail) config.tail_fraction = opts.tail_fraction;
  config.validate();
  return config;
}

std::string prepare_out_dir(const CommonOpts& opts) {
  std::string dir = opts.out_dir;
  if (const char* env = std::getenv("SHIPLAND_OUT"); env && *env) dir = env;
  std::filesystem::create_directories(dir);
  return dir;
}

int run_command(const CommonOpts& opts) {
  const shipland::ScenarioConfig config = load(opts);
  const std::string dir = prepare_out_dir(opts);

  const shipland::RunResult result = shipland::run_scenario(config);
  shipland::write_trace_csv(result.trace, dir + "/trace.csv");
  shipland::write_metrics(result.metrics, result.status, config,
                          dir + "/metrics.txt");

  const auto& m = result.metrics;
  if (result.status == shipland::RunStatus::Landed) {
    std::printf(
        "%s seed=%llu landed: time_to_land=%.3f s touchdown_error=%.3f m "
        "relative_velocity=%.3f m/s\n",
        to_string(config.kind), static_cast<unsigned long long>(config.seed),
        m.time_to_land, m.touchdown_horizontal_error,
        m.touchdown_relative_velocity);
  } else {
    std::printf("%s seed=%llu %s: mean_error=%.4f m max_error=%.4f m\n",
                to_string(config.kind),
                static_cast<unsigned long long>(config.seed),
                to_string(result.status), m.mean_position_error,
                m.max_position_error);
  }

  switch (result.status) {
    case shipland::RunStatus::Diverged: return kExitDiverged;
    case shipland::RunStatus::TimedOut: return kExitTimeout;
    default: return kExitOk;
  }
}

int sweep_command(const CommonOpts& opts, std::vector<double> grid_translation,
                  std::vector<double> grid_rotation) {
  const shipland::ScenarioConfig config = load(opts);
  const std::string dir = prepare_out_dir(opts);
  if (grid_translation.empty()) grid_translation = {2, 5, 13, 31, 60, 90};
  if (grid_rotation.empty()) grid_rotation = {2, 5, 13, 31, 60, 90};

  const auto cells =
      shipland::sweep_filter_cutoff(config, grid_translation, grid_rotation);
  shipland::write_sweep_csv(cells, dir + "/sweep.csv");

  const shipland::SweepCell* best = &cells.front();
  for (const auto& c : cells)
    if (c.mean_error < best->mean_error) best = &c;
  std::printf(
      "sweep: %zu cells, best cutoff=(%g, %g) mean_error=%.4f m "
      "time_to_land=%.1f s\n",
      cells.size(), best->cutoff_translation, best->cutoff_rotation,
      best->mean_error, best->time_to_land);
  return kExitOk;
}

int suite_command(const CommonOpts& opts) {
  const shipland::ScenarioConfig config = load(opts);
  const std::string dir = prepare_out_dir(opts);

  const auto cells = shipland::run_suite(config);
  shipland::write_suite_csv(cells, dir + "/suite.csv");
  std::printf("scenario    wind  mean_error_m\n");
  for (const auto& c : cells)
    std::printf("%-11s %-5s %.4f\n", to_string(c.kind), c.wind ? "on" : "off",
                c.mean_error);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrotor ship-landing scenario simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts, suite_opts;
  std::vector<double> grid_translation, grid_rotation;

  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  add_common(run, run_opts);

  CLI::App* sweep = app.add_subcommand(
      "sweep-filter", "Grid sweep over the two filter cut-off frequencies");
  add_common(sweep, sweep_opts);
  sweep->add_option("--grid-translation", grid_translation,
                    "Translation-filter cut-offs (rad/s)")
      ->delimiter(',');
  sweep->add_option("--grid-rotation", grid_rotation,
                    "Rotation-filter cut-offs (rad/s)")
      ->delimiter(',');

  CLI::App* suite = app.add_subcommand(
      "suite", "Lissajous/spiral/hover, each with and without wind");
  add_common(suite, suite_opts);

  CLI::App* defaults =
      app.add_subcommand("print-defaults", "Print the default scenario file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (defaults->parsed()) {
      std::fputs(shipland::serialize_config(shipland::ScenarioConfig{}).c_str(),
                 stdout);
      return kExitOk;
    }
    if (run->parsed()) return run_command(run_opts);
    if (sweep->parsed())
      return sweep_command(sweep_opts, grid_translation, grid_rotation);
    if (suite->parsed()) return suite_command(suite_opts);
  } catch (const shipland::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}

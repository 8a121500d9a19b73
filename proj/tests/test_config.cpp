#include <stdexcept>

#include "doctest.h"
#include "shipland/config.hpp"

using namespace shipland;

TEST_CASE("an empty file yields the default mission config") {
  const ScenarioConfig cfg = parse_config_text("");
  CHECK(cfg.kind == ScenarioKind::ShipLanding);
  CHECK(cfg.duration == 600.0);
  CHECK(cfg.dt == 0.002);
  CHECK(cfg.vehicle.mass == 100.0);
  CHECK(cfg.vehicle.inertia_yaw == 0.01);
  CHECK(cfg.vehicle.motor_speed_max == 500.0);
  CHECK(cfg.controller.gains.altitude.kp == 297.08);
  CHECK(cfg.controller.gains.yaw.ki == 3.83e-5);
  CHECK(cfg.ship.initial_x == 500.0);
  CHECK(cfg.ship.initial_heading_deg == 300.0);
  CHECK(cfg.ship.wave_phase == 2.2);
  CHECK(cfg.wind.wind_min == 10.0);
  CHECK(cfg.wind.wind_max == 20.0);
  CHECK(cfg.translation_noise.variance == 0.001);
  CHECK(cfg.rotation_noise.variance == 0.0001);
  CHECK(cfg.landing.holding_altitude == 20.0);
  CHECK(cfg.landing.position_tolerance == 1.0);
  CHECK(cfg.filter_cutoff_translation == 13.0);
  CHECK(cfg.filter_cutoff_rotation == 31.0);
}

TEST_CASE("values, comments and sections parse") {
  const ScenarioConfig cfg = parse_config_text(
      "# comment\n"
      "[scenario]\n"
      "kind = hover\n"
      "seed = 42   ; trailing comment\n"
      "\n"
      "[ship]\n"
      "speed = 7.5\n");
  CHECK(cfg.kind == ScenarioKind::Hover);
  CHECK(cfg.seed == 42);
  CHECK(cfg.ship.speed == 7.5);
}

TEST_CASE("unknown keys and sections are rejected with a line number") {
  CHECK_THROWS_WITH_AS(parse_config_text("[scenario]\nduratoin = 5\n"),
                       doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[not_a_section]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("orphan = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[scenario]\nno equals sign\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[scenario]\ndt = fast\n"), ConfigError);
}

TEST_CASE("invariant violations surface as validation errors") {
  CHECK_THROWS_AS(parse_config_text("[ship]\nwave_amplitude = -1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[scenario]\ndt = 0\n"),
                  std::invalid_argument);
}

TEST_CASE("serialize/parse round-trip is exact") {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::Spiral;
  cfg.seed = 1234567;
  cfg.dt = 0.001;
  cfg.vehicle.rudder_gain = 0.37;
  cfg.controller.gains.yaw.kd = 0.0518;
  cfg.controller.invert_roll_mapping = true;
  cfg.ship.wave_phase = 1.9;
  cfg.spiral.climb_rate = 0.25;

  const std::string text = serialize_config(cfg);
  const ScenarioConfig back = parse_config_text(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.kind == ScenarioKind::Spiral);
  CHECK(back.seed == 1234567);
  CHECK(back.vehicle.rudder_gain == 0.37);
  CHECK(back.controller.invert_roll_mapping == true);
  CHECK(back.spiral.climb_rate == 0.25);
}

TEST_CASE("defaults round-trip through the printed document") {
  const std::string text = serialize_config(ScenarioConfig{});
  const ScenarioConfig back = parse_config_text(text);
  CHECK(serialize_config(back) == text);
}

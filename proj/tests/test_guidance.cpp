#include <cmath>

#include "doctest.h"
#include "shipland/guidance.hpp"

using namespace shipland;

namespace {
const ShipParams kShip;       // reference mission ship
const LandingParams kLanding; // 20 m / 1 m / 1 m/s / 600 s
}  // namespace

TEST_CASE("lissajous reference") {
  LissajousConfig c;
  c.phase = 0.0;
  ReferencePoint r0 = lissajous_reference(0.0, c);
  CHECK(r0.position.x == 0.0);
  CHECK(r0.position.y == 0.0);
  CHECK(r0.position.z == c.altitude);

  LissajousConfig figure8;
  figure8.rate_x = 1.0;
  figure8.rate_y = 2.0;
  figure8.phase = M_PI / 2;
  for (double t : {0.3, 1.7, 4.0}) {
    ReferencePoint a = lissajous_reference(t, figure8);
    ReferencePoint b = lissajous_reference(t + 2 * M_PI, figure8);
    CHECK(a.position.x == doctest::Approx(b.position.x).epsilon(1e-9));
    CHECK(a.position.y == doctest::Approx(b.position.y).epsilon(1e-9));
  }

  LissajousConfig flat;
  flat.amplitude_x = 0.0;
  flat.amplitude_y = 0.0;
  ReferencePoint hover = lissajous_reference(123.0, flat);
  CHECK(hover.position.x == 0.0);
  CHECK(hover.position.y == 0.0);
}

TEST_CASE("spiral reference") {
  SpiralConfig c;
  SUBCASE("zero climb is a circle of the given radius") {
    c.climb_rate = 0.0;
    for (double t : {0.0, 10.0, 50.0}) {
      ReferencePoint r = spiral_reference(t, c);
      CHECK(r.position.horizontal_norm() == doctest::Approx(c.radius));
      CHECK(r.position.z == c.base_altitude);
    }
  }
  SUBCASE("one period climbs by rate times period") {
    const double period = 2 * M_PI / c.angular_rate;
    ReferencePoint a = spiral_reference(0.0, c);
    ReferencePoint b = spiral_reference(period, c);
    CHECK(b.position.x == doctest::Approx(a.position.x).epsilon(1e-9));
    CHECK(b.position.y == doctest::Approx(a.position.y).epsilon(1e-9));
    CHECK(b.position.z - a.position.z == doctest::Approx(c.climb_rate * period));
  }
  SUBCASE("zero radius climbs vertically") {
    c.radius = 0.0;
    ReferencePoint r = spiral_reference(33.0, c);
    CHECK(r.position.x == 0.0);
    CHECK(r.position.y == 0.0);
    CHECK(r.position.z == doctest::Approx(c.base_altitude + 3.3));
  }
}

TEST_CASE("plan_descent arithmetic on the reference wave") {
  // duration = (20 - 5)/1 = 15 s; peaks at 7.5386, 15.9162, ...
  DescentPlan plan = plan_descent(0.0, kLanding, kShip);
  const double first_peak = (M_PI / 2 - 2.2 + 2 * M_PI) / 0.75;
  const double period = 2 * M_PI / 0.75;
  CHECK(plan.descent_rate == 1.0);
  CHECK(plan.t_touch == doctest::Approx(first_peak + period).epsilon(1e-12));
  CHECK(plan.t_start == doctest::Approx(first_peak + period - 15.0).epsilon(1e-12));
  CHECK(plan.t_touch == doctest::Approx(15.917).epsilon(1e-3));
  CHECK(plan.t_start == doctest::Approx(0.917).epsilon(2e-3));
}

TEST_CASE("plan_descent rolls to the next period when the peak is too close") {
  const double first_peak = (M_PI / 2 - 2.2 + 2 * M_PI) / 0.75;
  const double period = 2 * M_PI / 0.75;
  // Just after the feasible start: the 15.9162 peak no longer fits 15 s.
  DescentPlan plan = plan_descent(1.0, kLanding, kShip);
  CHECK(plan.t_touch == doctest::Approx(first_peak + 2 * period).epsilon(1e-9));
}

TEST_CASE("plan_descent on a flat sea descends immediately") {
  ShipParams flat = kShip;
  flat.wave_amplitude = 0.0;
  DescentPlan plan = plan_descent(3.0, kLanding, flat);
  CHECK(plan.t_start == 3.0);
  CHECK(plan.t_touch == doctest::Approx(23.0));
}

TEST_CASE("planned touchdown lands on a wave peak") {
  for (double t_now : {0.0, 10.0, 100.0, 599.0}) {
    DescentPlan plan = plan_descent(t_now, kLanding, kShip);
    CHECK(plan.t_start >= t_now);
    ShipState deck = ship_state_at(plan.t_touch, kShip);
    CHECK(std::abs(deck.velocity.z) < 1e-9);
    CHECK(deck.position.z == doctest::Approx(kShip.wave_amplitude).epsilon(1e-9));
    // Closure rate at contact equals the target by construction.
    CHECK(plan.descent_rate == kLanding.target_relative_velocity);
  }
}

TEST_CASE("ship_track_reference per phase") {
  ShipState deck = ship_state_at(0.0, kShip);
  SUBCASE("hold: above the deck at holding altitude, ship heading") {
    ReferencePoint r =
        ship_track_reference(0.0, deck, MissionPhase::Hold, kLanding, nullptr);
    CHECK(r.position.x == doctest::Approx(500.0));
    CHECK(r.position.y == doctest::Approx(300.0));
    CHECK(r.position.z == doctest::Approx(20.0));
    CHECK(r.heading == doctest::Approx(300.0 * M_PI / 180.0));
  }
  SUBCASE("descending: altitude follows the ramp") {
    DescentPlan plan{2.0, 17.0, 1.0};
    ReferencePoint r = ship_track_reference(9.5, deck, MissionPhase::Descending,
                                            kLanding, &plan);
    CHECK(r.position.z == doctest::Approx(20.0 - 1.0 * 7.5));
    CHECK(r.velocity.z == doctest::Approx(-1.0));
  }
  SUBCASE("stationary ship on a flat sea gives a fixed reference") {
    ShipParams still = kShip;
    still.speed = 0.0;
    still.turn_rate_deg = 0.0;
    still.wave_amplitude = 0.0;
    ReferencePoint a = ship_track_reference(
        0.0, ship_state_at(0.0, still), MissionPhase::Hold, kLanding, nullptr);
    ReferencePoint b = ship_track_reference(
        50.0, ship_state_at(50.0, still), MissionPhase::Hold, kLanding, nullptr);
    CHECK(a.position.x == b.position.x);
    CHECK(a.position.y == b.position.y);
    CHECK(a.position.z == b.position.z);
  }
}

TEST_CASE("detect_touchdown") {
  ShipState deck = ship_state_at(0.0, kShip);
  SUBCASE("on the deck with matched velocity") {
    VehicleState v;
    v.position = deck.position;
    v.velocity = deck.velocity;
    auto rec = detect_touchdown(v, deck, 1.0, 1.0);
    REQUIRE(rec.has_value());
    CHECK(rec->horizontal_error == 0.0);
    CHECK(rec->relative_velocity == 0.0);
    CHECK(rec->time == 1.0);
  }
  SUBCASE("descending through the deck at 1 m/s") {
    VehicleState v;
    v.position = deck.position;
    v.velocity = deck.velocity;
    v.velocity.z -= 1.0;
    auto rec = detect_touchdown(v, deck, 2.0, 1.0);
    REQUIRE(rec.has_value());
    CHECK(rec->relative_velocity == doctest::Approx(1.0));
  }
  SUBCASE("still above the deck") {
    VehicleState v;
    v.position = deck.position;
    v.position.z += 0.5;
    CHECK_FALSE(detect_touchdown(v, deck, 0.0, 1.0).has_value());
  }
  SUBCASE("horizontally misaligned") {
    VehicleState v;
    v.position = deck.position;
    v.position.x += 2.0;
    v.position.z -= 0.1;
    CHECK_FALSE(detect_touchdown(v, deck, 0.0, 1.0).has_value());
  }
}

TEST_CASE("phase machine transitions") {
  LandingSequencer seq;
  CHECK(seq.phase() == MissionPhase::Approach);

  // Far away: stays in Approach.
  ShipState deck = ship_state_at(0.0, kShip);
  seq.update(0.0, {0.0, 0.0, 0.0}, deck, kLanding, kShip);
  CHECK(seq.phase() == MissionPhase::Approach);

  // Within tolerance of the holding point: Hold, and a plan appears.
  Vec3 hold_point{deck.position.x, deck.position.y, 20.0};
  seq.update(0.0, hold_point + Vec3{0.5, 0.0, 0.0}, deck, kLanding, kShip);
  CHECK(seq.phase() == MissionPhase::Hold);
  REQUIRE(seq.plan().has_value());
  const DescentPlan plan = *seq.plan();

  // Before t_start: still holding.
  seq.update(plan.t_start - 0.1, hold_point, deck, kLanding, kShip);
  CHECK(seq.phase() == MissionPhase::Hold);

  // At t_start: descending.
  seq.update(plan.t_start, hold_point, deck, kLanding, kShip);
  CHECK(seq.phase() == MissionPhase::Descending);

  // Losing horizontal alignment beyond 2x tolerance aborts to Hold with a
  // fresh plan.
  ShipState deck_late = ship_state_at(plan.t_start + 1.0, kShip);
  seq.update(plan.t_start + 1.0,
             Vec3{deck_late.position.x + 2.5, deck_late.position.y, 20.0},
             deck_late, kLanding, kShip);
  CHECK(seq.phase() == MissionPhase::Hold);
  REQUIRE(seq.plan().has_value());
  CHECK(seq.plan()->t_start >= plan.t_start);
}

TEST_CASE("timeout latches") {
  LandingSequencer seq;
  ShipState deck = ship_state_at(600.0, kShip);
  seq.update(600.0, {0.0, 0.0, 0.0}, deck, kLanding, kShip);
  CHECK(seq.phase() == MissionPhase::TimedOut);
  seq.update(601.0, {deck.position.x, deck.position.y, 20.0}, deck, kLanding, kShip);
  CHECK(seq.phase() == MissionPhase::TimedOut);
}

TEST_CASE("touchdown latches and freezes the reference") {
  LandingSequencer seq;
  ShipState deck = ship_state_at(0.0, kShip);
  Vec3 hold_point{deck.position.x, deck.position.y, 20.0};
  seq.update(0.0, hold_point, deck, kLanding, kShip);
  REQUIRE(seq.plan().has_value());
  const DescentPlan plan = *seq.plan();
  seq.update(plan.t_start, hold_point, deck, kLanding, kShip);
  CHECK(seq.phase() == MissionPhase::Descending);

  ShipState deck_touch = ship_state_at(plan.t_touch, kShip);
  VehicleState v;
  v.position = deck_touch.position;
  v.position.z -= 1e-4;
  v.velocity = deck_touch.velocity;
  v.velocity.z -= 1.0;
  CHECK(seq.check_touchdown(v, deck_touch, plan.t_touch, kLanding));
  CHECK(seq.phase() == MissionPhase::TouchedDown);
  REQUIRE(seq.touchdown().has_value());
  CHECK(seq.touchdown()->relative_velocity == doctest::Approx(1.0));

  ReferencePoint frozen = seq.reference(plan.t_touch + 5.0,
                                        ship_state_at(plan.t_touch + 5.0, kShip),
                                        kLanding);
  CHECK(frozen.position.x == v.position.x);
  CHECK(frozen.position.z == v.position.z);
}

TEST_CASE("perfect tracking touches down within one step of the plan") {
  // Substitute the reference for the vehicle: contact must occur within one
  // integration step of t_touch.
  LandingSequencer seq;
  const double dt = 0.002;
  bool touched = false;
  for (double t = 0.0; t < 60.0; t += dt) {
    ShipState deck = ship_state_at(t, kShip);
    ReferencePoint ref = seq.reference(t, deck, kLanding);
    seq.update(t, ref.position, deck, kLanding, kShip);
    ref = seq.reference(t, deck, kLanding);

    VehicleState v;
    v.position = ref.position;
    v.velocity = ref.velocity;
    if (seq.check_touchdown(v, deck, t, kLanding)) {
      touched = true;
      REQUIRE(seq.plan().has_value());
      CHECK(std::abs(t - seq.plan()->t_touch) <= dt + 1e-9);
      break;
    }
  }
  CHECK(touched);
}

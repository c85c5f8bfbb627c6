#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vanet/error.hpp"
#include "vanet/world.hpp"

using namespace vanet;

namespace {

Vehicle car(std::string id, double pos, double speed, double length = 4.5) {
  Vehicle v;
  v.id = std::move(id);
  v.lane_pos_m = pos;
  v.speed_mps = speed;
  v.length_m = length;
  return v;
}

WorldState world_of(std::vector<Vehicle> vehicles, std::vector<Obstacle> obstacles = {}) {
  WorldState w;
  w.vehicles = std::move(vehicles);
  w.obstacles = std::move(obstacles);
  return w;
}

}  // namespace

TEST(WorldStep, LinearMotionOneTick) {
  auto w = step(world_of({car("a", 0.0, 20.0)}));
  EXPECT_DOUBLE_EQ(w.vehicle("a").lane_pos_m, 20.0);
  EXPECT_EQ(w.tick_index, 1);
}

TEST(WorldStep, StationaryVehicleStays) {
  auto w = step(world_of({car("a", 12.5, 0.0)}));
  EXPECT_DOUBLE_EQ(w.vehicle("a").lane_pos_m, 12.5);
}

TEST(WorldStep, TickLengthScalesDisplacement) {
  auto w = world_of({car("a", 0.0, 20.0)});
  w.tick_ms = 250;
  w = step(std::move(w));
  EXPECT_DOUBLE_EQ(w.vehicle("a").lane_pos_m, 5.0);
}

TEST(WorldStep, OverlapLatchesBothAndStops) {
  auto w = step(world_of({car("rear", 0.0, 10.0), car("front", 12.0, 0.0)}));
  EXPECT_EQ(w.collided_ids(), (std::set<std::string>{"front", "rear"}));
  EXPECT_EQ(w.vehicle("rear").speed_mps, 0.0);
  EXPECT_EQ(w.vehicle("front").speed_mps, 0.0);
  EXPECT_EQ(w.newly_collided().size(), 2u);

  // Latching: collided vehicles stay collided and frozen.
  const double pos = w.vehicle("rear").lane_pos_m;
  for (int i = 0; i < 5; ++i) w = step(std::move(w));
  EXPECT_EQ(w.collided_ids().size(), 2u);
  EXPECT_TRUE(w.newly_collided().empty());
  EXPECT_EQ(w.vehicle("rear").lane_pos_m, pos);
}

TEST(WorldStep, ObstacleCollisionInvolvesOnlyVehicle) {
  auto w = step(world_of({car("a", 0.0, 10.0)}, {Obstacle{"rock", 13.0, 1.0}}));
  EXPECT_EQ(w.collided_ids(), (std::set<std::string>{"a"}));
}

TEST(WorldStep, FastVehicleCannotTunnelThroughShortOne) {
  // 60 m in one tick jumps clean over a 2 m object sitting at 30 m.
  auto w = step(world_of({car("fast", 0.0, 60.0), car("moto", 30.0, 0.0, 2.0)}));
  EXPECT_EQ(w.collided_ids(), (std::set<std::string>{"fast", "moto"}));
}

TEST(WorldStep, CarsInConvoyDoNotCollide) {
  auto w = world_of({car("a", 0.0, 20.0), car("b", 10.0, 20.0)});
  for (int i = 0; i < 10; ++i) w = step(std::move(w));
  EXPECT_TRUE(w.collided_ids().empty());
}

TEST(WorldStep, MatchesOverlapOracleOnRandomWorlds) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> gap(0.1, 8.0), speed(0.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    // Disjoint start, and per-tick displacement below any combined length:
    // the regime where swept and end-of-step contact coincide.
    WorldState w;
    const int n = 2 + trial % 40;
    double cursor = 0.0;
    for (int i = 0; i < n; ++i) {
      w.vehicles.push_back(car("v" + std::to_string(i), cursor, speed(rng)));
      cursor += 4.5 + gap(rng);
    }
    w.obstacles.push_back({"o", cursor, 1.0});
    std::shuffle(w.vehicles.begin(), w.vehicles.end(), rng);
    for (int s = 0; s < 3; ++s) {
      const auto before = w.collided_ids();
      WorldState moved = w;
      for (auto& v : moved.vehicles)
        if (!before.count(v.id)) v.lane_pos_m += v.speed_mps;
      std::set<std::string> fresh;
      for (const auto& id : oracle::overlapping_ids(moved))
        if (!before.count(id)) fresh.insert(id);

      w = step(std::move(w));
      const auto newly = w.newly_collided();
      ASSERT_EQ(std::set<std::string>(newly.begin(), newly.end()), fresh)
          << "trial " << trial << " step " << s;
      for (const auto& id : before) ASSERT_TRUE(w.is_collided(id));
      for (const auto& id : newly) ASSERT_EQ(w.vehicle(id).speed_mps, 0.0);
    }
  }
}

TEST(WorldStep, DeterministicAcrossRuns) {
  auto make = [] {
    WorldState w;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pos(0.0, 500.0), speed(0.0, 30.0);
    for (int i = 0; i < 50; ++i) w.vehicles.push_back(car("v" + std::to_string(i), pos(rng), speed(rng)));
    return w;
  };
  auto a = make(), b = make();
  for (int i = 0; i < 20; ++i) {
    a = step(std::move(a));
    b = step(std::move(b));
    ASSERT_EQ(a, b);
  }
}

TEST(ForwardDistance, SimpleSubtraction) {
  auto w = world_of({car("f", 5.5, 0.0), car("l", 50.0, 0.0)});  // front at 10
  EXPECT_DOUBLE_EQ(*forward_distance(w, "f"), 40.0);
}

TEST(ForwardDistance, NothingAheadIsAbsent) {
  auto w = world_of({car("f", 0.0, 0.0), car("behind", -50.0, 0.0), car("far", 300.0, 0.0)});
  EXPECT_FALSE(forward_distance(w, "f").has_value());
}

TEST(ForwardDistance, NearestOfSeveral) {
  // front at 10; objects at gaps 35, 12, 80
  auto w = world_of({car("f", 5.5, 0.0), car("a", 45.0, 0.0), car("b", 22.0, 0.0)},
                    {Obstacle{"c", 90.0, 3.0}});
  EXPECT_DOUBLE_EQ(*forward_distance(w, "f"), 12.0);
  EXPECT_EQ(forward_distance(w, "f"), oracle::min_gap_scan(w, "f"));
}

TEST(ForwardDistance, OverlapClampsToZero) {
  auto w = world_of({car("f", 0.0, 0.0), car("l", 2.0, 0.0)});
  EXPECT_DOUBLE_EQ(*forward_distance(w, "f"), 0.0);
  EXPECT_FALSE(forward_distance(w, "l").has_value());
}

TEST(ForwardDistance, RangeBoundaryInclusive) {
  auto w = world_of({car("f", 0.0, 0.0), car("l", 124.5, 0.0)});
  EXPECT_DOUBLE_EQ(*forward_distance(w, "f"), 120.0);
  w.vehicle("l").lane_pos_m = 124.6;
  EXPECT_FALSE(forward_distance(w, "f").has_value());
}

TEST(ForwardDistance, UnknownVehicleThrows) {
  auto w = world_of({car("f", 0.0, 0.0)});
  EXPECT_THROW(forward_distance(w, "ghost"), UnknownVehicle);
  EXPECT_THROW(vibration_level(w, "ghost"), UnknownVehicle);
  EXPECT_THROW(geo_fix(w, "ghost"), UnknownVehicle);
}

TEST(ForwardDistance, AgreesWithBruteForceOnRandomWorlds) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pos(-300.0, 300.0), len(0.5, 15.0);
  for (int trial = 0; trial < 200; ++trial) {
    WorldState w;
    const int n = 1 + static_cast<int>(rng() % 150);
    const int m = static_cast<int>(rng() % 50);
    for (int i = 0; i < n; ++i) w.vehicles.push_back(car("v" + std::to_string(i), pos(rng), 0.0, len(rng)));
    for (int i = 0; i < m; ++i) w.obstacles.push_back({"o" + std::to_string(i), pos(rng), len(rng) - 0.5});
    for (const auto& v : w.vehicles)
      ASSERT_EQ(forward_distance(w, v.id), oracle::min_gap_scan(w, v.id)) << v.id;
  }
}

TEST(Vibration, SpikeExactlyOncePerCollision) {
  auto w = world_of({car("rear", 0.0, 10.0), car("front", 30.0, 0.0), car("bystander", -100.0, 0.0)});
  std::vector<double> rear, bystander;
  for (int i = 0; i < 6; ++i) {
    w = step(std::move(w));
    rear.push_back(vibration_level(w, "rear"));
    bystander.push_back(vibration_level(w, "bystander"));
  }
  // rear front: 14.5, 24.5, 34.5 -> contact on step 3
  EXPECT_EQ(rear, (std::vector<double>{0.5, 0.5, 8.0, 0.5, 0.5, 0.5}));
  EXPECT_EQ(bystander, std::vector<double>(6, 0.5));
}

TEST(Vibration, ConfigurableLevels) {
  auto w = world_of({car("a", 0.0, 10.0)}, {Obstacle{"wall", 12.0, 0.0}});
  w.sensors.vibration_baseline_g = 0.1;
  w.sensors.vibration_spike_g = 12.0;
  EXPECT_EQ(vibration_level(w, "a"), 0.1);
  w = step(std::move(w));
  EXPECT_EQ(vibration_level(w, "a"), 12.0);
}

TEST(GeoFix, OriginAtZero) {
  auto w = world_of({car("a", 0.0, 0.0)});
  w.geo_origin = {23.8103, 90.4125};
  w.geo_bearing_deg = 37.0;
  EXPECT_EQ(geo_fix(w, "a"), w.geo_origin);
}

TEST(GeoFix, EastwardKilometerAtEquator) {
  auto w = world_of({car("a", 1000.0, 0.0)});
  w.geo_bearing_deg = 90.0;
  const auto fix = geo_fix(w, "a");
  const auto expected = oracle::destination({0.0, 0.0}, 90.0, 1000.0);
  EXPECT_NEAR(fix.lat_deg, 0.0, 1e-12);
  EXPECT_NEAR(fix.lon_deg, expected.lon_deg, 1e-9);
  EXPECT_NEAR(fix.lon_deg, 0.0089932, 1e-7);
}

TEST(GeoFix, CloseToSphericalDestinationAtDhaka) {
  auto w = world_of({car("a", 0.0, 0.0)});
  w.geo_origin = {23.8103, 90.4125};
  for (double bearing : {0.0, 45.0, 90.0, 200.0}) {
    w.geo_bearing_deg = bearing;
    for (double d : {50.0, 500.0, 2000.0}) {
      w.vehicle("a").lane_pos_m = d;
      const auto got = geo_fix(w, "a");
      const auto want = oracle::destination(w.geo_origin, bearing, d);
      EXPECT_LT(oracle::great_circle_m(got, want), 0.5) << bearing << " " << d;
    }
  }
}

TEST(GeoFix, SamePositionSameFix) {
  auto w = world_of({car("a", 75.0, 0.0), car("b", 75.0, 3.0)});
  w.geo_origin = {10.0, 20.0};
  w.geo_bearing_deg = 12.0;
  EXPECT_EQ(geo_fix(w, "a"), geo_fix(w, "b"));
}

TEST(WorldValidate, RejectsBadInput) {
  EXPECT_THROW(validate(world_of({car("a", 0, 0), car("a", 5, 0)})), ValidationError);
  EXPECT_THROW(validate(world_of({car("a", 0, 0, 0.0)})), ValidationError);
  EXPECT_THROW(validate(world_of({car("a", 0, -1.0)})), ValidationError);
  EXPECT_THROW(validate(world_of({car("a", 0, 0)}, {Obstacle{"o", 0, -1.0}})), ValidationError);
  auto w = world_of({car("a", 0, 0)});
  w.tick_ms = 0;
  EXPECT_THROW(validate(w), ValidationError);
  w.tick_ms = 1000;
  w.geo_origin = {91.0, 0.0};
  EXPECT_THROW(validate(w), ValidationError);
  EXPECT_NO_THROW(validate(world_of({car("a", 0, 0)})));
}

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vanet/error.hpp"
#include "vanet/v2v.hpp"

using namespace vanet;

namespace {

Vehicle node(std::string id, double pos, bool equipped = true) {
  Vehicle v;
  v.id = std::move(id);
  v.lane_pos_m = pos;
  v.equipped = equipped;
  return v;
}

V2vMessage from(const WorldState& w, const std::string& id, Tick tick = 0,
                V2vKind kind = V2vKind::ProximityWarning) {
  return {id, kind, geo_fix(w, id), w.vehicle(id).lane_pos_m, tick};
}

}  // namespace

TEST(V2v, RangeLimited) {
  WorldState w;
  w.vehicles = {node("s", 0.0), node("near", 100.0), node("far", 500.0)};
  V2vChannel ch;
  EXPECT_EQ(ch.broadcast(w, from(w, "s"), 300.0), (std::set<std::string>{"near"}));
  EXPECT_EQ(ch.inbox("near").size(), 1u);
  EXPECT_TRUE(ch.inbox("far").empty());
}

TEST(V2v, RangeBoundaryInclusiveBothDirections) {
  WorldState w;
  w.vehicles = {node("s", 0.0), node("ahead", 300.0), node("behind", -300.0), node("out", 300.5)};
  V2vChannel ch;
  EXPECT_EQ(ch.broadcast(w, from(w, "s"), 300.0), (std::set<std::string>{"ahead", "behind"}));
}

TEST(V2v, UnequippedReceiverIgnored) {
  WorldState w;
  w.vehicles = {node("s", 0.0), node("plain", 50.0, false)};
  V2vChannel ch;
  EXPECT_TRUE(ch.broadcast(w, from(w, "s"), 300.0).empty());
}

TEST(V2v, LoneSender) {
  WorldState w;
  w.vehicles = {node("s", 0.0)};
  V2vChannel ch;
  EXPECT_TRUE(ch.broadcast(w, from(w, "s"), 300.0).empty());
  EXPECT_EQ(ch.delivered_count(), 0u);
}

TEST(V2v, Errors) {
  WorldState w;
  w.vehicles = {node("s", 0.0), node("plain", 10.0, false)};
  V2vChannel ch;
  EXPECT_THROW(ch.broadcast(w, from(w, "plain"), 300.0), SenderNotEquipped);
  V2vMessage ghost = from(w, "s");
  ghost.sender_id = "ghost";
  EXPECT_THROW(ch.broadcast(w, ghost, 300.0), UnknownVehicle);
  EXPECT_THROW(ch.broadcast(w, from(w, "s"), 0.0), std::invalid_argument);
}

TEST(V2v, InboxOrderedByTickThenSender) {
  WorldState w;
  w.vehicles = {node("a", 0.0), node("b", 10.0), node("c", 20.0)};
  V2vChannel ch;
  ch.broadcast(w, from(w, "c", 5), 300.0);
  ch.broadcast(w, from(w, "b", 3), 300.0);
  ch.broadcast(w, from(w, "a", 5), 300.0);
  const auto& box = ch.inbox("b");
  ASSERT_EQ(box.size(), 2u);
  EXPECT_EQ(box[0].sender_id, "a");
  EXPECT_EQ(box[1].sender_id, "c");
  const auto& box_a = ch.inbox("a");
  ASSERT_EQ(box_a.size(), 2u);
  EXPECT_EQ(box_a[0].tick, 3);
  EXPECT_EQ(box_a[1].tick, 5);
}

TEST(V2v, PredicateFiltersDelivery) {
  WorldState w;
  w.vehicles = {node("s", 0.0), node("x", 10.0), node("y", 20.0)};
  V2vChannel ch([](const Vehicle&, const Vehicle& rx, const V2vMessage&) { return rx.id != "x"; });
  EXPECT_EQ(ch.broadcast(w, from(w, "s"), 300.0), (std::set<std::string>{"y"}));
}

TEST(V2v, MatchesBruteForceAndConservesMessages) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pos(-1000.0, 1000.0);
  std::bernoulli_distribution equipped(0.6);
  for (int trial = 0; trial < 50; ++trial) {
    WorldState w;
    for (int i = 0; i < 100; ++i) w.vehicles.push_back(node("v" + std::to_string(i), pos(rng), equipped(rng)));
    w.vehicles[0].equipped = true;
    V2vChannel ch;
    std::size_t total = 0;
    for (const auto& v : w.vehicles) {
      if (!v.equipped) continue;
      const auto got = ch.broadcast(w, from(w, v.id, trial), 300.0);
      ASSERT_EQ(got, oracle::v2v_recipients(w, v.id, v.lane_pos_m, 300.0));
      total += got.size();
      ASSERT_EQ(ch.delivered_count(), total);
    }
  }
}

TEST(V2v, ReachabilityIsSymmetric) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> pos(-600.0, 600.0);
  WorldState w;
  for (int i = 0; i < 60; ++i) w.vehicles.push_back(node("v" + std::to_string(i), pos(rng)));
  V2vChannel ch;
  std::map<std::string, std::set<std::string>> reach;
  for (const auto& v : w.vehicles) reach[v.id] = ch.broadcast(w, from(w, v.id), 250.0);
  for (const auto& [a, peers] : reach)
    for (const auto& b : peers) EXPECT_TRUE(reach[b].count(a)) << a << " -> " << b;
}

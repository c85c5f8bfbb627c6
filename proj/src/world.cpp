#include "vanet/world.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "vanet/error.hpp"

namespace vanet {
namespace {

// Intervals [a, a + len_a] and [b, b + len_b] moving linearly from (a0, b0) to
// (a1, b1) touch at some instant iff the offset b - a, which sweeps
// [min(d0, d1), max(d0, d1)], meets [-len_b, len_a].
bool swept_overlap(double a0, double a1, double len_a, double b0, double b1,
                   double len_b) noexcept {
  const double d0 = b0 - a0;
  const double d1 = b1 - a1;
  return std::max(std::min(d0, d1), -len_b) <= std::min(std::max(d0, d1), len_a);
}

}  // namespace

const Vehicle& WorldState::vehicle(std::string_view id) const {
  auto it = std::find_if(vehicles.begin(), vehicles.end(),
                         [&](const Vehicle& v) { return v.id == id; });
  if (it == vehicles.end()) throw UnknownVehicle(std::string(id));
  return *it;
}

Vehicle& WorldState::vehicle(std::string_view id) {
  return const_cast<Vehicle&>(std::as_const(*this).vehicle(id));
}

bool WorldState::has_vehicle(std::string_view id) const noexcept {
  return std::any_of(vehicles.begin(), vehicles.end(),
                     [&](const Vehicle& v) { return v.id == id; });
}

bool WorldState::is_collided(std::string_view id) const noexcept {
  return collision_ticks.find(std::string(id)) != collision_ticks.end();
}

std::set<std::string> WorldState::collided_ids() const {
  std::set<std::string> ids;
  for (const auto& [id, tick] : collision_ticks) ids.insert(id);
  return ids;
}

std::vector<std::string> WorldState::newly_collided() const {
  std::vector<std::string> ids;
  for (const auto& [id, tick] : collision_ticks) {
    if (tick == tick_index) ids.push_back(id);
  }
  return ids;
}

void validate(const WorldState& world) {
  if (world.tick_ms <= 0) throw ValidationError("tick_ms", "must be > 0");
  if (world.tick_index < 0) throw ValidationError("tick_index", "must be >= 0");
  if (!is_valid(world.geo_origin)) throw ValidationError("geo_origin", "out of range");
  if (!std::isfinite(world.geo_bearing_deg))
    throw ValidationError("geo_bearing_deg", "must be finite");
  if (!(world.sensors.ultrasonic_range_m > 0.0))
    throw ValidationError("sensor_range_m", "must be > 0");
  std::unordered_set<std::string> ids;
  for (const auto& v : world.vehicles) {
    if (!ids.insert(v.id).second) throw ValidationError("vehicle." + v.id, "duplicate id");
    if (!std::isfinite(v.lane_pos_m))
      throw ValidationError("vehicle." + v.id + ".pos", "must be finite");
    if (!std::isfinite(v.speed_mps) || v.speed_mps < 0.0)
      throw ValidationError("vehicle." + v.id + ".speed", "must be finite and >= 0");
    if (!std::isfinite(v.length_m) || v.length_m <= 0.0)
      throw ValidationError("vehicle." + v.id + ".length", "must be > 0");
  }
  for (const auto& o : world.obstacles) {
    if (!ids.insert(o.id).second) throw ValidationError("obstacle." + o.id, "duplicate id");
    if (!std::isfinite(o.lane_pos_m))
      throw ValidationError("obstacle." + o.id + ".pos", "must be finite");
    if (!std::isfinite(o.extent_m) || o.extent_m < 0.0)
      throw ValidationError("obstacle." + o.id + ".extent", "must be >= 0");
  }
  for (const auto& [id, tick] : world.collision_ticks) {
    if (!world.has_vehicle(id)) throw ValidationError("collided_ids", "unknown id " + id);
  }
}

WorldState step(WorldState world) {
  const double dt_s = world.tick_ms / 1000.0;
  std::vector<double> before(world.vehicles.size());
  for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
    auto& v = world.vehicles[i];
    before[i] = v.lane_pos_m;
    if (!world.is_collided(v.id)) v.lane_pos_m += v.speed_mps * dt_s;
  }
  ++world.tick_index;

  std::vector<bool> hit(world.vehicles.size(), false);
  for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
    const auto& a = world.vehicles[i];
    for (std::size_t j = i + 1; j < world.vehicles.size(); ++j) {
      const auto& b = world.vehicles[j];
      if (world.is_collided(a.id) && world.is_collided(b.id)) continue;
      if (swept_overlap(before[i], a.lane_pos_m, a.length_m, before[j], b.lane_pos_m,
                        b.length_m)) {
        hit[i] = hit[j] = true;
      }
    }
    if (world.is_collided(a.id)) continue;
    for (const auto& o : world.obstacles) {
      if (swept_overlap(before[i], a.lane_pos_m, a.length_m, o.lane_pos_m, o.lane_pos_m,
                        o.extent_m)) {
        hit[i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
    auto& v = world.vehicles[i];
    if (!hit[i] || world.is_collided(v.id)) continue;
    world.collision_ticks.emplace(v.id, world.tick_index);
    v.speed_mps = 0.0;
  }
  return world;
}

std::optional<double> forward_distance(const WorldState& world, std::string_view vehicle_id) {
  const Vehicle& self = world.vehicle(vehicle_id);
  const double front = self.front_m();
  std::optional<double> best;
  auto consider = [&](double rear, double far_end) {
    if (far_end < front) return;
    const double gap = std::max(0.0, rear - front);
    if (gap > world.sensors.ultrasonic_range_m) return;
    if (!best || gap < *best) best = gap;
  };
  for (const auto& v : world.vehicles) {
    if (v.id != self.id) consider(v.lane_pos_m, v.front_m());
  }
  for (const auto& o : world.obstacles) consider(o.lane_pos_m, o.front_m());
  return best;
}

double vibration_level(const WorldState& world, std::string_view vehicle_id) {
  const Vehicle& v = world.vehicle(vehicle_id);
  auto it = world.collision_ticks.find(v.id);
  if (it != world.collision_ticks.end() && it->second == world.tick_index)
    return world.sensors.vibration_spike_g;
  return world.sensors.vibration_baseline_g;
}

GeoCoordinate geo_fix(const WorldState& world, std::string_view vehicle_id) {
  const Vehicle& v = world.vehicle(vehicle_id);
  return offset_along_bearing(world.geo_origin, world.geo_bearing_deg, v.lane_pos_m);
}

}  // namespace vanet

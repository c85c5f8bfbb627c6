#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vanet/geo.hpp"

namespace vanet {

/// A simulated car on the single lane. `lane_pos_m` is the rear bumper; the
/// vehicle occupies [lane_pos_m, lane_pos_m + length_m].
struct Vehicle {
  std::string id;
  double lane_pos_m = 0.0;
  double speed_mps = 0.0;
  double length_m = 4.5;
  bool equipped = true;
  std::vector<std::string> family_contacts;
  std::optional<std::string> policy_id;

  double front_m() const noexcept { return lane_pos_m + length_m; }

  friend bool operator==(const Vehicle&, const Vehicle&) = default;
};

/// A static object occupying [lane_pos_m, lane_pos_m + extent_m].
struct Obstacle {
  std::string id;
  double lane_pos_m = 0.0;
  double extent_m = 0.0;

  double front_m() const noexcept { return lane_pos_m + extent_m; }

  friend bool operator==(const Obstacle&, const Obstacle&) = default;
};

struct SensorModel {
  double ultrasonic_range_m = 120.0;
  double vibration_baseline_g = 0.5;
  double vibration_spike_g = 8.0;

  friend bool operator==(const SensorModel&, const SensorModel&) = default;
};

struct WorldState {
  Tick tick_index = 0;
  int tick_ms = 1000;
  std::vector<Vehicle> vehicles;
  std::vector<Obstacle> obstacles;
  GeoCoordinate geo_origin;
  double geo_bearing_deg = 0.0;
  SensorModel sensors;
  /// Vehicle id -> tick_index at which its first collision was recorded.
  std::map<std::string, Tick> collision_ticks;

  const Vehicle& vehicle(std::string_view id) const;
  Vehicle& vehicle(std::string_view id);
  bool has_vehicle(std::string_view id) const noexcept;
  bool is_collided(std::string_view id) const noexcept;
  std::set<std::string> collided_ids() const;
  /// Ids whose collision was recorded by the most recent step.
  std::vector<std::string> newly_collided() const;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

/// Throws ValidationError on duplicate ids, non-positive lengths or tick_ms,
/// negative or non-finite speeds, negative extents, or a bad geo origin.
void validate(const WorldState& world);

/// Advances every non-collided vehicle by one tick and latches collisions.
/// Contact is tested over the whole tick interval, so a fast vehicle cannot
/// pass through a shorter one between samples.
WorldState step(WorldState world);

/// Gap from the vehicle's front to the nearest object ahead, or nullopt when
/// nothing lies within the ultrasonic range. An object is ahead when its front
/// is at or beyond this vehicle's front; overlapping objects read as 0 m.
std::optional<double> forward_distance(const WorldState& world, std::string_view vehicle_id);

/// Spike on the tick the vehicle's collision is recorded, baseline otherwise.
double vibration_level(const WorldState& world, std::string_view vehicle_id);

GeoCoordinate geo_fix(const WorldState& world, std::string_view vehicle_id);

}  // namespace vanet

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vanet/controller.hpp"
#include "vanet/dispatch.hpp"
#include "vanet/world.hpp"

namespace vanet {

struct ScriptedAck {
  Tick tick = 0;
  std::string vehicle_id;

  friend bool operator==(const ScriptedAck&, const ScriptedAck&) = default;
};

struct ScriptedSpeed {
  Tick tick = 0;
  std::string vehicle_id;
  double speed_mps = 0.0;

  friend bool operator==(const ScriptedSpeed&, const ScriptedSpeed&) = default;
};

struct Scenario {
  std::string name;
  Tick duration_ticks = 0;
  int tick_ms = 1000;
  GeoCoordinate geo_origin;
  double geo_bearing_deg = 0.0;
  SensorModel sensors;
  ControllerConfig controller;
  std::vector<Vehicle> vehicles;
  std::vector<Obstacle> obstacles;
  std::vector<ScriptedAck> acks;
  std::vector<ScriptedSpeed> speed_changes;
  /// Seed file path, relative to the scenario file's directory.
  std::optional<std::string> registry_file;
  std::vector<Responder> responders;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates scenario text. Throws ParseError for syntax problems
/// and ValidationError for semantic ones.
///
/// Format: one directive per line, '#' starts a comment line.
///   scenario   name=<id> duration_ticks=<n> [tick_ms=<n>]
///   geo        lat=<deg> lon=<deg> [bearing_deg=<deg>]
///   sensors    [ultrasonic_range_m=] [vibration_baseline_g=] [vibration_spike_g=]
///   controller [safe_threshold_m=] [warning_threshold_m=] [critical_threshold_m=]
///              [vibration_threshold_g=] [ack_window_s=] [v2v_warn_level=] [v2v_range_m=]
///   registry   file=<path>
///   responder  <id>|<kind>|<name>|<phone>|<lat>|<lon>
///   vehicle    id=<id> pos=<m> speed=<m/s> [length=<m>] [equipped=true|false]
///              [contacts=<phone>,<phone>...] [policy=<id>]
///   obstacle   id=<id> pos=<m> [extent=<m>]
///   ack        tick=<n> vehicle=<id>
///   speed      tick=<n> vehicle=<id> value=<m/s>
Scenario parse_scenario(std::string_view text);

/// Reads and parses a scenario file. Throws Error if unreadable.
Scenario load_scenario(const std::filesystem::path& path);

/// Throws ValidationError naming the first offending field.
void validate(const Scenario& scenario);

/// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

/// Seed file entries (resolved against `base_dir`) followed by inline
/// responders. Throws ParseError or Error on a bad seed file and
/// ValidationError when an inline responder clashes.
ResponderRegistry build_registry(const Scenario& scenario, const std::filesystem::path& base_dir);

/// The scenario's world at tick 0.
WorldState initial_world(const Scenario& scenario);

}  // namespace vanet

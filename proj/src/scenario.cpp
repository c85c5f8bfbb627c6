#include "vanet/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "vanet/error.hpp"

namespace vanet {
namespace {

constexpr std::size_t kMaxIdLength = 64;

bool is_id(std::string_view s) {
  if (s.empty() || s.size() > kMaxIdLength) return false;
  if (!std::isalnum(static_cast<unsigned char>(s.front()))) return false;
  for (unsigned char c : s) {
    if (!std::isalnum(c) && c != '_' && c != '-' && c != '.' && c != ':') return false;
  }
  return true;
}

bool is_phone(std::string_view s) {
  if (s.empty() || s.size() > 32) return false;
  for (unsigned char c : s) {
    if (!std::isdigit(c) && c != '+' && c != '-') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// key=value arguments of one directive line; every key must be consumed.
class Fields {
 public:
  Fields(std::size_t line, std::string_view args) : line_(line) {
    std::size_t pos = 0;
    while (pos < args.size()) {
      while (pos < args.size() && std::isspace(static_cast<unsigned char>(args[pos]))) ++pos;
      std::size_t end = pos;
      while (end < args.size() && !std::isspace(static_cast<unsigned char>(args[end]))) ++end;
      if (end == pos) break;
      const std::string_view token = args.substr(pos, end - pos);
      pos = end;
      const auto eq = token.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw ParseError(line_, fmt::format("expected key=value, got '{}'", token));
      const std::string key(token.substr(0, eq));
      if (!values_.emplace(key, std::string(token.substr(eq + 1))).second)
        throw ParseError(line_, fmt::format("duplicate key '{}'", key));
    }
  }

  std::optional<std::string> text(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string v = std::move(it->second);
    values_.erase(it);
    return v;
  }

  std::string required_text(const std::string& key) {
    auto v = text(key);
    if (!v) throw ParseError(line_, fmt::format("missing key '{}'", key));
    return *v;
  }

  std::optional<double> number(const std::string& key) {
    auto v = text(key);
    if (!v) return std::nullopt;
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || ptr != v->data() + v->size() || v->empty())
      throw ParseError(line_, fmt::format("'{}' must be a number, got '{}'", key, *v));
    return out;
  }

  double required_number(const std::string& key) {
    if (values_.count(key) == 0) throw ParseError(line_, fmt::format("missing key '{}'", key));
    return *number(key);
  }

  template <typename Int>
  std::optional<Int> integer(const std::string& key) {
    auto v = text(key);
    if (!v) return std::nullopt;
    Int out{};
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || ptr != v->data() + v->size() || v->empty())
      throw ParseError(line_, fmt::format("'{}' must be an integer, got '{}'", key, *v));
    return out;
  }

  template <typename Int>
  Int required_integer(const std::string& key) {
    if (values_.count(key) == 0) throw ParseError(line_, fmt::format("missing key '{}'", key));
    return *integer<Int>(key);
  }

  std::optional<bool> boolean(const std::string& key) {
    auto v = text(key);
    if (!v) return std::nullopt;
    if (*v == "true") return true;
    if (*v == "false") return false;
    throw ParseError(line_, fmt::format("'{}' must be true or false, got '{}'", key, *v));
  }

  void finish() const {
    if (!values_.empty())
      throw ParseError(line_, fmt::format("unknown key '{}'", values_.begin()->first));
  }

 private:
  std::size_t line_;
  std::map<std::string, std::string> values_;
};

std::vector<std::string> split_contacts(std::string_view s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  for (std::size_t start = 0;;) {
    const auto comma = s.find(',', start);
    out.emplace_back(s.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void check_tick(Tick tick, Tick duration, const std::string& field) {
  if (tick < 0 || tick >= duration)
    throw ValidationError(field, fmt::format("tick {} outside [0, {})", tick, duration));
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::map<std::string, std::size_t> singletons;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;

    std::size_t split = 0;
    while (split < line.size() && !std::isspace(static_cast<unsigned char>(line[split]))) ++split;
    const std::string directive(line.substr(0, split));
    const std::string_view rest = trim(line.substr(split));

    if (directive == "scenario" || directive == "geo" || directive == "sensors" ||
        directive == "controller" || directive == "registry") {
      auto [it, fresh] = singletons.emplace(directive, line_no);
      if (!fresh)
        throw ParseError(line_no, fmt::format("'{}' already given on line {}", directive,
                                              it->second));
    }

    if (directive == "responder") {
      try {
        auto one = parse_registry(rest);
        if (one.size() != 1) throw ParseError(1, "expected exactly one responder record");
        s.responders.push_back(one.responders().front());
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.message());
      }
      continue;
    }

    Fields f(line_no, rest);
    if (directive == "scenario") {
      s.name = f.required_text("name");
      s.duration_ticks = f.required_integer<Tick>("duration_ticks");
      s.tick_ms = f.integer<int>("tick_ms").value_or(s.tick_ms);
    } else if (directive == "geo") {
      s.geo_origin.lat_deg = f.required_number("lat");
      s.geo_origin.lon_deg = f.required_number("lon");
      s.geo_bearing_deg = f.number("bearing_deg").value_or(s.geo_bearing_deg);
    } else if (directive == "sensors") {
      auto& m = s.sensors;
      m.ultrasonic_range_m = f.number("ultrasonic_range_m").value_or(m.ultrasonic_range_m);
      m.vibration_baseline_g = f.number("vibration_baseline_g").value_or(m.vibration_baseline_g);
      m.vibration_spike_g = f.number("vibration_spike_g").value_or(m.vibration_spike_g);
    } else if (directive == "controller") {
      auto& c = s.controller;
      c.safe_threshold_m = f.number("safe_threshold_m").value_or(c.safe_threshold_m);
      c.warning_threshold_m = f.number("warning_threshold_m").value_or(c.warning_threshold_m);
      c.critical_threshold_m = f.number("critical_threshold_m").value_or(c.critical_threshold_m);
      c.vibration_threshold_g = f.number("vibration_threshold_g").value_or(c.vibration_threshold_g);
      c.ack_window_s = f.number("ack_window_s").value_or(c.ack_window_s);
      c.v2v_range_m = f.number("v2v_range_m").value_or(c.v2v_range_m);
      if (auto level = f.text("v2v_warn_level")) {
        auto parsed = parse_proximity_level(*level);
        if (!parsed) throw ParseError(line_no, fmt::format("unknown level '{}'", *level));
        c.v2v_warn_level = *parsed;
      }
    } else if (directive == "registry") {
      s.registry_file = f.required_text("file");
    } else if (directive == "vehicle") {
      Vehicle v;
      v.id = f.required_text("id");
      v.lane_pos_m = f.required_number("pos");
      v.speed_mps = f.required_number("speed");
      v.length_m = f.number("length").value_or(v.length_m);
      v.equipped = f.boolean("equipped").value_or(v.equipped);
      if (auto contacts = f.text("contacts")) v.family_contacts = split_contacts(*contacts);
      v.policy_id = f.text("policy");
      s.vehicles.push_back(std::move(v));
    } else if (directive == "obstacle") {
      Obstacle o;
      o.id = f.required_text("id");
      o.lane_pos_m = f.required_number("pos");
      o.extent_m = f.number("extent").value_or(o.extent_m);
      s.obstacles.push_back(std::move(o));
    } else if (directive == "ack") {
      ScriptedAck a;
      a.tick = f.required_integer<Tick>("tick");
      a.vehicle_id = f.required_text("vehicle");
      s.acks.push_back(std::move(a));
    } else if (directive == "speed") {
      ScriptedSpeed sp;
      sp.tick = f.required_integer<Tick>("tick");
      sp.vehicle_id = f.required_text("vehicle");
      sp.speed_mps = f.required_number("value");
      s.speed_changes.push_back(std::move(sp));
    } else {
      throw ParseError(line_no, fmt::format("unknown directive '{}'", directive));
    }
    f.finish();
  }
  if (singletons.count("scenario") == 0)
    throw ValidationError("scenario", "missing 'scenario' directive");
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void validate(const Scenario& s) {
  if (!is_id(s.name)) throw ValidationError("name", "must be a 1-64 char identifier");
  if (s.duration_ticks <= 0) throw ValidationError("duration_ticks", "must be > 0");
  if (s.tick_ms <= 0) throw ValidationError("tick_ms", "must be > 0");

  for (const auto& v : s.vehicles) {
    if (!is_id(v.id)) throw ValidationError("vehicle.id", fmt::format("bad identifier '{}'", v.id));
    for (const auto& phone : v.family_contacts) {
      if (!is_phone(phone))
        throw ValidationError("vehicle." + v.id + ".contacts", fmt::format("bad phone '{}'", phone));
    }
    if (v.policy_id && !is_id(*v.policy_id))
      throw ValidationError("vehicle." + v.id + ".policy", "must be an identifier");
  }
  for (const auto& o : s.obstacles) {
    if (!is_id(o.id))
      throw ValidationError("obstacle.id", fmt::format("bad identifier '{}'", o.id));
  }
  validate(initial_world(s));
  validate(s.controller);
  if (!std::isfinite(s.sensors.vibration_baseline_g) || !std::isfinite(s.sensors.vibration_spike_g))
    throw ValidationError("sensors", "vibration levels must be finite");

  for (std::size_t i = 0; i < s.acks.size(); ++i) {
    const auto& a = s.acks[i];
    const std::string field = fmt::format("ack[{}]", i);
    check_tick(a.tick, s.duration_ticks, field + ".tick");
    auto it = std::find_if(s.vehicles.begin(), s.vehicles.end(),
                           [&](const Vehicle& v) { return v.id == a.vehicle_id; });
    if (it == s.vehicles.end())
      throw ValidationError(field + ".vehicle", fmt::format("unknown vehicle '{}'", a.vehicle_id));
    if (!it->equipped)
      throw ValidationError(field + ".vehicle", fmt::format("'{}' has no push button", a.vehicle_id));
  }
  for (std::size_t i = 0; i < s.speed_changes.size(); ++i) {
    const auto& sp = s.speed_changes[i];
    const std::string field = fmt::format("speed[{}]", i);
    check_tick(sp.tick, s.duration_ticks, field + ".tick");
    if (std::none_of(s.vehicles.begin(), s.vehicles.end(),
                     [&](const Vehicle& v) { return v.id == sp.vehicle_id; }))
      throw ValidationError(field + ".vehicle", fmt::format("unknown vehicle '{}'", sp.vehicle_id));
    if (!std::isfinite(sp.speed_mps) || sp.speed_mps < 0.0)
      throw ValidationError(field + ".value", "must be finite and >= 0");
  }

  if (s.registry_file && s.registry_file->empty())
    throw ValidationError("registry.file", "must be non-empty");
  ResponderRegistry inline_registry;
  for (const auto& r : s.responders) {
    try {
      inline_registry.add(r);
    } catch (const DuplicateId&) {
      throw ValidationError("responder." + r.id, "duplicate id");
    }
  }
}

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  auto line = [&out](std::string text) {
    out += text;
    out += '\n';
  };
  line(fmt::format("scenario name={} duration_ticks={} tick_ms={}", s.name, s.duration_ticks,
                   s.tick_ms));
  line(fmt::format("geo lat={} lon={} bearing_deg={}", s.geo_origin.lat_deg, s.geo_origin.lon_deg,
                   s.geo_bearing_deg));
  line(fmt::format("sensors ultrasonic_range_m={} vibration_baseline_g={} vibration_spike_g={}",
                   s.sensors.ultrasonic_range_m, s.sensors.vibration_baseline_g,
                   s.sensors.vibration_spike_g));
  const auto& c = s.controller;
  line(fmt::format(
      "controller safe_threshold_m={} warning_threshold_m={} critical_threshold_m={} "
      "vibration_threshold_g={} ack_window_s={} v2v_warn_level={} v2v_range_m={}",
      c.safe_threshold_m, c.warning_threshold_m, c.critical_threshold_m, c.vibration_threshold_g,
      c.ack_window_s, to_string(c.v2v_warn_level), c.v2v_range_m));
  if (s.registry_file) line(fmt::format("registry file={}", *s.registry_file));
  for (const auto& r : s.responders) line("responder " + format_registry_line(r));
  for (const auto& v : s.vehicles) {
    std::string text = fmt::format("vehicle id={} pos={} speed={} length={} equipped={}", v.id,
                                   v.lane_pos_m, v.speed_mps, v.length_m, v.equipped);
    if (!v.family_contacts.empty())
      text += fmt::format(" contacts={}", fmt::join(v.family_contacts, ","));
    if (v.policy_id) text += fmt::format(" policy={}", *v.policy_id);
    line(std::move(text));
  }
  for (const auto& o : s.obstacles)
    line(fmt::format("obstacle id={} pos={} extent={}", o.id, o.lane_pos_m, o.extent_m));
  for (const auto& a : s.acks) line(fmt::format("ack tick={} vehicle={}", a.tick, a.vehicle_id));
  for (const auto& sp : s.speed_changes)
    line(fmt::format("speed tick={} vehicle={} value={}", sp.tick, sp.vehicle_id, sp.speed_mps));
  return out;
}

ResponderRegistry build_registry(const Scenario& s, const std::filesystem::path& base_dir) {
  ResponderRegistry registry;
  if (s.registry_file) {
    std::filesystem::path path(*s.registry_file);
    if (path.is_relative()) path = base_dir / path;
    registry = load_registry(path.string());
  }
  for (const auto& r : s.responders) {
    try {
      registry.add(r);
    } catch (const DuplicateId&) {
      throw ValidationError("responder." + r.id, "id already present in registry file");
    }
  }
  return registry;
}

WorldState initial_world(const Scenario& s) {
  WorldState w;
  w.tick_ms = s.tick_ms;
  w.vehicles = s.vehicles;
  w.obstacles = s.obstacles;
  w.geo_origin = s.geo_origin;
  w.geo_bearing_deg = s.geo_bearing_deg;
  w.sensors = s.sensors;
  return w;
}

}  // namespace vanet

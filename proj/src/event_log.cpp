#include "vanet/event_log.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <tuple>

#include <fmt/format.h>

#include "vanet/error.hpp"

namespace vanet {
namespace {

constexpr std::string_view kNoVehicle = "-";

bool needs_escape(unsigned char c) {
  return c == '%' || c == '=' || std::isspace(c) || std::iscntrl(c) || c >= 0x80;
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (needs_escape(c)) {
      out += fmt::format("%{:02X}", c);
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::optional<std::string> unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size()) return std::nullopt;
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i + 1, s.data() + i + 3, value, 16);
    if (ec != std::errc{} || ptr != s.data() + i + 3) return std::nullopt;
    out += static_cast<char>(value);
    i += 2;
  }
  return out;
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::IndicatorChange: return "indicator_change";
    case EventKind::V2vSent: return "v2v_sent";
    case EventKind::V2vReceived: return "v2v_received";
    case EventKind::CollisionDetected: return "collision_detected";
    case EventKind::AckPressed: return "ack_pressed";
    case EventKind::Escalated: return "escalated";
    case EventKind::GeoFix: return "geo_fix";
    case EventKind::SmsSent: return "sms_sent";
    case EventKind::DispatchResolved: return "dispatch_resolved";
  }
  return "indicator_change";
}

std::optional<EventKind> parse_event_kind(std::string_view text) noexcept {
  for (auto k : kAllEventKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<std::string_view> EventRecord::get(std::string_view key) const {
  for (const auto& [k, v] : payload) {
    if (k == key) return std::string_view(v);
  }
  return std::nullopt;
}

EventRecord& EventRecord::with(std::string key, std::string value) {
  payload.emplace_back(std::move(key), std::move(value));
  return *this;
}

void sort_canonical(std::vector<EventRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.tick, a.vehicle_id, a.kind) < std::tie(b.tick, b.vehicle_id, b.kind);
  });
}

std::string format_record(const EventRecord& r) {
  std::string line = fmt::format("tick={} vehicle={} event={}", r.tick,
                                 r.vehicle_id ? escape(*r.vehicle_id) : std::string(kNoVehicle),
                                 to_string(r.kind));
  for (const auto& [k, v] : r.payload) {
    line += ' ';
    line += k;
    line += '=';
    line += escape(v);
  }
  return line;
}

std::string format_event_log(const EventLog& log) {
  std::string out;
  for (const auto& r : log.records) {
    out += format_record(r);
    out += '\n';
  }
  return out;
}

EventLog parse_event_log(std::string_view text) {
  EventLog log;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::pair<std::string, std::string>> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
      auto end = line.find(' ', pos);
      if (end == std::string_view::npos) end = line.size();
      const std::string_view token = line.substr(pos, end - pos);
      pos = end + 1;
      if (token.empty()) continue;
      const auto eq = token.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw ParseError(line_no, fmt::format("malformed field '{}'", token));
      auto value = unescape(token.substr(eq + 1));
      if (!value) throw ParseError(line_no, fmt::format("bad escape in '{}'", token));
      fields.emplace_back(std::string(token.substr(0, eq)), std::move(*value));
    }
    if (fields.size() < 3 || fields[0].first != "tick" || fields[1].first != "vehicle" ||
        fields[2].first != "event")
      throw ParseError(line_no, "record must start with tick=, vehicle=, event=");

    EventRecord r;
    const auto& tick_text = fields[0].second;
    auto [ptr, ec] = std::from_chars(tick_text.data(), tick_text.data() + tick_text.size(), r.tick);
    if (ec != std::errc{} || ptr != tick_text.data() + tick_text.size() || r.tick < 0)
      throw ParseError(line_no, fmt::format("bad tick '{}'", tick_text));
    if (fields[1].second != kNoVehicle) r.vehicle_id = fields[1].second;
    auto kind = parse_event_kind(fields[2].second);
    if (!kind) throw ParseError(line_no, fmt::format("unknown event '{}'", fields[2].second));
    r.kind = *kind;
    r.payload.assign(std::make_move_iterator(fields.begin() + 3),
                     std::make_move_iterator(fields.end()));
    log.records.push_back(std::move(r));
  }
  return log;
}

Summary summarize(const EventLog& log) {
  Summary s;
  for (auto k : kAllEventKinds) s.counts[k] = 0;
  std::map<std::string, Tick> collided_at;
  std::map<std::string, Tick> dispatched_at;
  for (const auto& r : log.records) {
    ++s.counts[r.kind];
    if (!r.vehicle_id) continue;
    const std::string& id = *r.vehicle_id;
    switch (r.kind) {
      case EventKind::IndicatorChange: {
        const auto text = r.get("level");
        const auto level = text ? parse_proximity_level(*text) : std::nullopt;
        if (!level) break;
        auto [it, inserted] = s.max_severity.emplace(id, *level);
        if (!inserted && *level > it->second) it->second = *level;
        break;
      }
      case EventKind::CollisionDetected: collided_at.emplace(id, r.tick); break;
      case EventKind::DispatchResolved: dispatched_at.emplace(id, r.tick); break;
      default: break;
    }
  }
  for (const auto& [id, tick] : collided_at) {
    auto it = dispatched_at.find(id);
    s.time_to_dispatch[id] =
        it == dispatched_at.end() ? std::nullopt : std::optional<Tick>(it->second - tick);
  }
  return s;
}

std::string format_summary(const Summary& s) {
  std::string out;
  for (const auto& [kind, n] : s.counts) out += fmt::format("count.{}={}\n", to_string(kind), n);
  for (const auto& [id, level] : s.max_severity)
    out += fmt::format("max_severity.{}={}\n", id, to_string(level));
  for (const auto& [id, ticks] : s.time_to_dispatch) {
    out += fmt::format("time_to_dispatch.{}={}\n", id,
                       ticks ? std::to_string(*ticks) : std::string("none"));
  }
  return out;
}

}  // namespace vanet

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vanet/controller.hpp"
#include "vanet/geo.hpp"

namespace vanet {

/// Event kinds in canonical log order.
enum class EventKind {
  IndicatorChange,
  V2vSent,
  V2vReceived,
  CollisionDetected,
  AckPressed,
  Escalated,
  GeoFix,
  SmsSent,
  DispatchResolved,
};

inline constexpr EventKind kAllEventKinds[] = {
    EventKind::IndicatorChange, EventKind::V2vSent,   EventKind::V2vReceived,
    EventKind::CollisionDetected, EventKind::AckPressed, EventKind::Escalated,
    EventKind::GeoFix,          EventKind::SmsSent,   EventKind::DispatchResolved,
};

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view text) noexcept;

struct EventRecord {
  Tick tick = 0;
  std::optional<std::string> vehicle_id;
  EventKind kind = EventKind::IndicatorChange;
  std::vector<std::pair<std::string, std::string>> payload;

  std::optional<std::string_view> get(std::string_view key) const;
  EventRecord& with(std::string key, std::string value);

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct EventLog {
  std::vector<EventRecord> records;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

/// Stable sort by (tick, vehicle_id, kind). Records without a vehicle sort
/// first within their tick.
void sort_canonical(std::vector<EventRecord>& records);

/// One line per record:
///   tick=<n> vehicle=<id or -> event=<kind> key=value ...
/// Values are percent-encoded for '%', '=', whitespace and control bytes.
std::string format_record(const EventRecord& record);
std::string format_event_log(const EventLog& log);

/// Inverse of format_event_log. Throws ParseError.
EventLog parse_event_log(std::string_view text);

struct Summary {
  std::map<EventKind, std::size_t> counts;
  /// Highest zone each vehicle's indicators reported.
  std::map<std::string, ProximityLevel> max_severity;
  /// For each vehicle with a collision_detected record: ticks until its
  /// dispatch_resolved, or nullopt when the alert was suppressed.
  std::map<std::string, std::optional<Tick>> time_to_dispatch;

  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summarize(const EventLog& log);
std::string format_summary(const Summary& summary);

}  // namespace vanet

#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "vanet/geo.hpp"

namespace vanet {

/// Proximity zones, ordered by severity.
enum class ProximityLevel { Safe = 0, Caution = 1, Warning = 2, Critical = 3 };

std::string_view to_string(ProximityLevel level) noexcept;
std::optional<ProximityLevel> parse_proximity_level(std::string_view text) noexcept;

/// LED and buzzer outputs. Each flag means "blinking" (or sounding).
struct IndicatorState {
  bool green = false;
  bool yellow = false;
  bool red = false;
  bool blue = false;
  bool buzzer = false;

  friend bool operator==(const IndicatorState&, const IndicatorState&) = default;
};

/// Exactly one zone LED lit, and the buzzer never sounds without red.
bool is_sound(const IndicatorState& s) noexcept;

struct ControllerConfig {
  double safe_threshold_m = 50.0;
  double warning_threshold_m = 30.0;
  double critical_threshold_m = 10.0;
  double vibration_threshold_g = 4.0;
  double ack_window_s = 30.0;
  ProximityLevel v2v_warn_level = ProximityLevel::Critical;
  double v2v_range_m = 300.0;

  friend bool operator==(const ControllerConfig&, const ControllerConfig&) = default;
};

/// Throws ValidationError unless critical < warning < safe, the window and
/// range are positive, and the vibration threshold is finite.
void validate(const ControllerConfig& cfg);

enum class AckTrigger { Vibration };

namespace phase {
struct Monitoring {
  friend bool operator==(const Monitoring&, const Monitoring&) = default;
};
struct AwaitingAck {
  Tick trigger_tick = 0;
  Tick deadline_tick = 0;
  AckTrigger trigger = AckTrigger::Vibration;
  friend bool operator==(const AwaitingAck&, const AwaitingAck&) = default;
};
struct Escalated {
  friend bool operator==(const Escalated&, const Escalated&) = default;
};
}  // namespace phase

using ControllerPhase = std::variant<phase::Monitoring, phase::AwaitingAck, phase::Escalated>;

struct ControllerState {
  ControllerPhase phase = phase::Monitoring{};
  ProximityLevel last_level = ProximityLevel::Safe;
  bool escalation_emitted = false;
  /// Largest vibration seen while the current (or last) window was open.
  double vibration_peak_g = 0.0;
  std::optional<Tick> last_tick;

  friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

enum class V2vKind { ProximityWarning, CollisionAlert };

std::string_view to_string(V2vKind kind) noexcept;

namespace action {
struct SetIndicators {
  IndicatorState indicators;
  ProximityLevel level = ProximityLevel::Safe;
  friend bool operator==(const SetIndicators&, const SetIndicators&) = default;
};
struct BroadcastV2V {
  V2vKind kind = V2vKind::ProximityWarning;
  friend bool operator==(const BroadcastV2V&, const BroadcastV2V&) = default;
};
struct RequestGeoFix {
  friend bool operator==(const RequestGeoFix&, const RequestGeoFix&) = default;
};
struct SendFamilySms {
  friend bool operator==(const SendFamilySms&, const SendFamilySms&) = default;
};
struct ReportToCloud {
  friend bool operator==(const ReportToCloud&, const ReportToCloud&) = default;
};
}  // namespace action

using ControllerAction = std::variant<action::SetIndicators, action::BroadcastV2V,
                                      action::RequestGeoFix, action::SendFamilySms,
                                      action::ReportToCloud>;

struct ControllerInputs {
  std::optional<double> distance_m;
  double vibration_g = 0.0;
  bool ack_pressed = false;
  Tick now_tick = 0;
  int tick_ms = 1000;
};

struct TickResult {
  ControllerState state;
  std::vector<ControllerAction> actions;
};

/// Maps a forward distance to its zone. Absent means nothing in range.
/// Throws InvalidDistance for negative or non-finite input.
ProximityLevel classify(std::optional<double> distance_m, const ControllerConfig& cfg);

IndicatorState indicators_for(ProximityLevel level, const ControllerPhase& phase) noexcept;

/// Number of ticks in the acknowledgment window, rounded up.
Tick ack_window_ticks(const ControllerConfig& cfg, int tick_ms);

/// One step of the on-board state machine.
///
/// Actions are emitted in a fixed order: SetIndicators first, then an
/// edge-triggered proximity broadcast, then (on the escalating tick only)
/// RequestGeoFix, SendFamilySms, ReportToCloud and the collision broadcast.
/// An acknowledgment counts only while now_tick < deadline_tick. Escalated is
/// terminal but indicators keep tracking the measured distance.
///
/// Throws OutOfOrderTick if now_tick does not exceed the previous tick.
TickResult controller_tick(const ControllerState& state, const ControllerInputs& inputs,
                           const ControllerConfig& cfg);

}  // namespace vanet

#include "vanet/controller.hpp"

#include <cmath>
#include <string>

#include "vanet/error.hpp"

namespace vanet {

std::string_view to_string(ProximityLevel level) noexcept {
  switch (level) {
    case ProximityLevel::Safe: return "safe";
    case ProximityLevel::Caution: return "caution";
    case ProximityLevel::Warning: return "warning";
    case ProximityLevel::Critical: return "critical";
  }
  return "safe";
}

std::optional<ProximityLevel> parse_proximity_level(std::string_view text) noexcept {
  for (auto level : {ProximityLevel::Safe, ProximityLevel::Caution, ProximityLevel::Warning,
                     ProximityLevel::Critical}) {
    if (text == to_string(level)) return level;
  }
  return std::nullopt;
}

std::string_view to_string(V2vKind kind) noexcept {
  return kind == V2vKind::ProximityWarning ? "proximity_warning" : "collision_alert";
}

bool is_sound(const IndicatorState& s) noexcept {
  const int zone_leds = int{s.green} + int{s.yellow} + int{s.red};
  return zone_leds == 1 && (!s.buzzer || s.red);
}

void validate(const ControllerConfig& cfg) {
  auto finite_positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!finite_positive(cfg.critical_threshold_m))
    throw ValidationError("critical_threshold_m", "must be > 0");
  if (!(cfg.critical_threshold_m < cfg.warning_threshold_m))
    throw ValidationError("warning_threshold_m", "must exceed critical_threshold_m");
  if (!(cfg.warning_threshold_m < cfg.safe_threshold_m) || !std::isfinite(cfg.safe_threshold_m))
    throw ValidationError("safe_threshold_m", "must exceed warning_threshold_m");
  if (!std::isfinite(cfg.vibration_threshold_g))
    throw ValidationError("vibration_threshold_g", "must be finite");
  if (!finite_positive(cfg.ack_window_s)) throw ValidationError("ack_window_s", "must be > 0");
  if (!finite_positive(cfg.v2v_range_m)) throw ValidationError("v2v_range_m", "must be > 0");
  if (cfg.v2v_warn_level == ProximityLevel::Safe)
    throw ValidationError("v2v_warn_level", "must be above safe");
}

ProximityLevel classify(std::optional<double> distance_m, const ControllerConfig& cfg) {
  if (!distance_m) return ProximityLevel::Safe;
  const double d = *distance_m;
  if (!std::isfinite(d) || d < 0.0)
    throw InvalidDistance("distance must be finite and >= 0, got " + std::to_string(d));
  if (d <= cfg.critical_threshold_m) return ProximityLevel::Critical;
  if (d <= cfg.warning_threshold_m) return ProximityLevel::Warning;
  if (d <= cfg.safe_threshold_m) return ProximityLevel::Caution;
  return ProximityLevel::Safe;
}

IndicatorState indicators_for(ProximityLevel level, const ControllerPhase& phase) noexcept {
  IndicatorState s;
  switch (level) {
    case ProximityLevel::Safe: s.green = true; break;
    case ProximityLevel::Caution: s.yellow = true; break;
    case ProximityLevel::Warning: s.red = true; break;
    case ProximityLevel::Critical: s.red = s.buzzer = true; break;
  }
  if (const auto* waiting = std::get_if<phase::AwaitingAck>(&phase))
    s.blue = waiting->trigger == AckTrigger::Vibration;
  return s;
}

Tick ack_window_ticks(const ControllerConfig& cfg, int tick_ms) {
  if (tick_ms <= 0) throw ValidationError("tick_ms", "must be > 0");
  return static_cast<Tick>(std::ceil(cfg.ack_window_s * 1000.0 / tick_ms));
}

TickResult controller_tick(const ControllerState& state, const ControllerInputs& in,
                           const ControllerConfig& cfg) {
  if (state.last_tick && in.now_tick <= *state.last_tick)
    throw OutOfOrderTick(*state.last_tick, in.now_tick);

  TickResult out{state, {}};
  ControllerState& next = out.state;
  next.last_tick = in.now_tick;

  const ProximityLevel level = classify(in.distance_m, cfg);
  const bool warn_edge = state.last_level < cfg.v2v_warn_level && level >= cfg.v2v_warn_level;
  next.last_level = level;

  bool escalate = false;
  if (std::holds_alternative<phase::Monitoring>(next.phase) &&
      in.vibration_g >= cfg.vibration_threshold_g) {
    next.phase = phase::AwaitingAck{in.now_tick, in.now_tick + ack_window_ticks(cfg, in.tick_ms),
                                    AckTrigger::Vibration};
    next.vibration_peak_g = in.vibration_g;
  }
  if (auto* waiting = std::get_if<phase::AwaitingAck>(&next.phase)) {
    if (in.vibration_g > next.vibration_peak_g) next.vibration_peak_g = in.vibration_g;
    if (in.ack_pressed && in.now_tick < waiting->deadline_tick) {
      next.phase = phase::Monitoring{};
    } else if (in.now_tick >= waiting->deadline_tick && !next.escalation_emitted) {
      next.phase = phase::Escalated{};
      next.escalation_emitted = true;
      escalate = true;
    }
  }

  out.actions.emplace_back(action::SetIndicators{indicators_for(level, next.phase), level});
  if (warn_edge) out.actions.emplace_back(action::BroadcastV2V{V2vKind::ProximityWarning});
  if (escalate) {
    out.actions.emplace_back(action::RequestGeoFix{});
    out.actions.emplace_back(action::SendFamilySms{});
    out.actions.emplace_back(action::ReportToCloud{});
    out.actions.emplace_back(action::BroadcastV2V{V2vKind::CollisionAlert});
  }
  return out;
}

}  // namespace vanet

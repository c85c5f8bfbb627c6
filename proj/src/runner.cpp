#include "vanet/runner.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <utility>

#include <fmt/format.h>

#include "vanet/controller.hpp"
#include "vanet/error.hpp"
#include "vanet/v2v.hpp"

namespace vanet {
namespace {

std::string coord(double deg) { return fmt::format("{:.6f}", deg); }

std::string meters(double m) { return fmt::format("{:.1f}", m); }

std::string flag(bool b) { return b ? "1" : "0"; }

struct VehicleRuntime {
  ControllerState controller;
  std::optional<action::SetIndicators> shown;
  GeoCoordinate last_fix;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, const ResponderRegistry& registry)
      : scenario_(scenario), registry_(registry), world_(initial_world(scenario)) {
    for (const auto& v : world_.vehicles) {
      if (v.equipped) runtime_.emplace(v.id, VehicleRuntime{});
    }
    for (const auto& a : scenario.acks) acks_.emplace(a.tick, a.vehicle_id);
  }

  RunOutcome run() {
    for (Tick t = 0; t < scenario_.duration_ticks; ++t) {
      try {
        tick(t);
      } catch (const RunError&) {
        throw;
      } catch (const Error& e) {
        throw RunError(t, e.what());
      }
    }
    return {std::move(log_), std::move(world_), store_.records(), outbox_.entries()};
  }

 private:
  EventRecord& emit(Tick t, const std::string& vehicle, EventKind kind) {
    pending_.push_back(EventRecord{t, vehicle, kind, {}});
    return pending_.back();
  }

  void tick(Tick t) {
    for (const auto& sp : scenario_.speed_changes) {
      if (sp.tick == t && !world_.is_collided(sp.vehicle_id))
        world_.vehicle(sp.vehicle_id).speed_mps = sp.speed_mps;
    }
    world_ = step(std::move(world_));

    for (const auto& id : world_.newly_collided()) {
      const GeoCoordinate fix = geo_fix(world_, id);
      emit(t, id, EventKind::CollisionDetected)
          .with("vibration_g", fmt::format("{}", vibration_level(world_, id)))
          .with("pos_m", meters(world_.vehicle(id).lane_pos_m))
          .with("lat_deg", coord(fix.lat_deg))
          .with("lon_deg", coord(fix.lon_deg));
    }

    // runtime_ is keyed by id, so iteration is in ascending id order.
    for (auto& [id, rt] : runtime_) {
      ControllerInputs in;
      in.distance_m = forward_distance(world_, id);
      in.vibration_g = vibration_level(world_, id);
      in.now_tick = t;
      in.tick_ms = world_.tick_ms;
      auto [first, last] = acks_.equal_range(t);
      in.ack_pressed = std::any_of(first, last, [&](const auto& kv) { return kv.second == id; });

      TickResult result = controller_tick(rt.controller, in, scenario_.controller);
      const ControllerState before = std::exchange(rt.controller, result.state);

      if (in.ack_pressed) {
        // A window opened on this very tick and closed by the same press
        // leaves the phase at Monitoring on both sides.
        const bool window_open =
            std::holds_alternative<phase::AwaitingAck>(before.phase) ||
            (std::holds_alternative<phase::Monitoring>(before.phase) &&
             in.vibration_g >= scenario_.controller.vibration_threshold_g);
        const bool cancelled =
            window_open && std::holds_alternative<phase::Monitoring>(rt.controller.phase);
        emit(t, id, EventKind::AckPressed).with("cancelled", flag(cancelled));
      }
      if (!std::holds_alternative<phase::Escalated>(before.phase) &&
          std::holds_alternative<phase::Escalated>(rt.controller.phase)) {
        emit(t, id, EventKind::Escalated)
            .with("vibration_peak_g", fmt::format("{}", rt.controller.vibration_peak_g));
      }
      for (const auto& act : result.actions) interpret(t, id, rt, act);
    }

    sort_canonical(pending_);
    std::move(pending_.begin(), pending_.end(), std::back_inserter(log_.records));
    pending_.clear();
  }

  CollisionReport report_for(Tick t, const std::string& id, const VehicleRuntime& rt) const {
    return {id, rt.last_fix, t, rt.controller.vibration_peak_g, world_.vehicle(id).policy_id};
  }

  void interpret(Tick t, const std::string& id, VehicleRuntime& rt, const ControllerAction& act) {
    if (const auto* set = std::get_if<action::SetIndicators>(&act)) {
      if (rt.shown && *rt.shown == *set) return;
      rt.shown = *set;
      const auto& s = set->indicators;
      emit(t, id, EventKind::IndicatorChange)
          .with("level", std::string(to_string(set->level)))
          .with("green", flag(s.green))
          .with("yellow", flag(s.yellow))
          .with("red", flag(s.red))
          .with("blue", flag(s.blue))
          .with("buzzer", flag(s.buzzer));
    } else if (std::holds_alternative<action::RequestGeoFix>(act)) {
      rt.last_fix = geo_fix(world_, id);
      emit(t, id, EventKind::GeoFix)
          .with("lat_deg", coord(rt.last_fix.lat_deg))
          .with("lon_deg", coord(rt.last_fix.lon_deg));
    } else if (std::holds_alternative<action::SendFamilySms>(act)) {
      for (auto& sms : family_alert(report_for(t, id, rt), world_.vehicle(id).family_contacts)) {
        emit(t, id, EventKind::SmsSent).with("to", sms.to).with("body", sms.body);
        outbox_.send(std::move(sms));
      }
    } else if (std::holds_alternative<action::ReportToCloud>(act)) {
      const DispatchPlan plan = handle_report(registry_, store_, report_for(t, id, rt));
      auto& rec = emit(t, id, EventKind::DispatchResolved);
      rec.with("seq", std::to_string(store_.size()))
          .with("hospital", plan.hospital.id)
          .with("hospital_m", meters(plan.distances_m.at(plan.hospital.id)))
          .with("police", plan.police.id)
          .with("police_m", meters(plan.distances_m.at(plan.police.id)));
      if (plan.insurance) {
        rec.with("insurance", plan.insurance->id)
            .with("insurance_m", meters(plan.distances_m.at(plan.insurance->id)));
      } else {
        rec.with("insurance", "none");
      }
    } else if (const auto* bc = std::get_if<action::BroadcastV2V>(&act)) {
      const Vehicle& sender = world_.vehicle(id);
      const GeoCoordinate fix = geo_fix(world_, id);
      const V2vMessage msg{id, bc->kind, fix, sender.lane_pos_m, t};
      const auto recipients = channel_.broadcast(world_, msg, scenario_.controller.v2v_range_m);
      emit(t, id, EventKind::V2vSent)
          .with("kind", std::string(to_string(bc->kind)))
          .with("lat_deg", coord(fix.lat_deg))
          .with("lon_deg", coord(fix.lon_deg))
          .with("recipients", std::to_string(recipients.size()))
          .with("to", fmt::format("{}", fmt::join(recipients, ",")));
      for (const auto& r : recipients) {
        emit(t, r, EventKind::V2vReceived)
            .with("sender_id", id)
            .with("kind", std::string(to_string(bc->kind)))
            .with("lat_deg", coord(fix.lat_deg))
            .with("lon_deg", coord(fix.lon_deg));
      }
    }
  }

  const Scenario& scenario_;
  const ResponderRegistry& registry_;
  WorldState world_;
  std::map<std::string, VehicleRuntime> runtime_;
  std::multimap<Tick, std::string> acks_;
  V2vChannel channel_;
  DispatchStore store_;
  Outbox outbox_;
  EventLog log_;
  std::vector<EventRecord> pending_;
};

}  // namespace

RunOutcome simulate(const Scenario& scenario, const ResponderRegistry& registry) {
  validate(scenario);
  return Simulation(scenario, registry).run();
}

EventLog run(const Scenario& scenario, const ResponderRegistry& registry) {
  return simulate(scenario, registry).log;
}

}  // namespace vanet

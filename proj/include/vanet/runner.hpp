#pragma once

#include <vector>

#include "vanet/dispatch.hpp"
#include "vanet/event_log.hpp"
#include "vanet/notify.hpp"
#include "vanet/scenario.hpp"
#include "vanet/world.hpp"

namespace vanet {

struct RunOutcome {
  EventLog log;
  WorldState final_world;
  std::vector<DispatchRecord> dispatches;
  std::vector<OutboxEntry> outbox;
};

/// Runs `scenario` for duration_ticks ticks. Each tick t applies scripted
/// speed changes, steps the world, senses, runs every equipped vehicle's
/// controller in ascending id order, interprets the resulting actions, and
/// appends that tick's records in canonical order.
///
/// Module failures are rethrown as RunError carrying the tick.
RunOutcome simulate(const Scenario& scenario, const ResponderRegistry& registry);

EventLog run(const Scenario& scenario, const ResponderRegistry& registry);

}  // namespace vanet

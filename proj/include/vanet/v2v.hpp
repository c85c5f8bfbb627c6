#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vanet/controller.hpp"
#include "vanet/geo.hpp"
#include "vanet/world.hpp"

namespace vanet {

struct V2vMessage {
  std::string sender_id;
  V2vKind kind = V2vKind::ProximityWarning;
  GeoCoordinate location;
  double sender_lane_pos_m = 0.0;
  Tick tick = 0;

  friend bool operator==(const V2vMessage&, const V2vMessage&) = default;
};

/// Extra delivery filter applied after the range and equipment checks.
using DeliveryPredicate =
    std::function<bool(const Vehicle& sender, const Vehicle& receiver, const V2vMessage&)>;

/// Range-limited broadcast medium between equipped vehicles. Delivery is
/// instantaneous; with the default predicate it is also lossless.
///
/// Broadcasts for one tick must be serialized by the caller.
class V2vChannel {
 public:
  V2vChannel() = default;
  explicit V2vChannel(DeliveryPredicate predicate) : predicate_(std::move(predicate)) {}

  /// Delivers `msg` to every equipped vehicle other than the sender whose lane
  /// position is within `range_m` of msg.sender_lane_pos_m. Returns the
  /// recipient ids. Throws UnknownVehicle, SenderNotEquipped, or
  /// std::invalid_argument when range_m is not positive.
  std::set<std::string> broadcast(const WorldState& world, const V2vMessage& msg,
                                  double range_m);

  /// Messages received by `vehicle_id`, ordered by (tick, sender_id).
  const std::vector<V2vMessage>& inbox(std::string_view vehicle_id) const;

  std::size_t delivered_count() const noexcept { return delivered_; }

 private:
  DeliveryPredicate predicate_;
  std::map<std::string, std::vector<V2vMessage>, std::less<>> inboxes_;
  std::size_t delivered_ = 0;
};

}  // namespace vanet

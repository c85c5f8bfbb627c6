#include "vanet/v2v.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "vanet/error.hpp"

namespace vanet {

std::set<std::string> V2vChannel::broadcast(const WorldState& world, const V2vMessage& msg,
                                            double range_m) {
  if (!(range_m > 0.0)) throw std::invalid_argument("V2V range must be > 0");
  const Vehicle& sender = world.vehicle(msg.sender_id);
  if (!sender.equipped) throw SenderNotEquipped(sender.id);

  std::set<std::string> recipients;
  for (const auto& v : world.vehicles) {
    if (!v.equipped || v.id == sender.id) continue;
    if (std::abs(v.lane_pos_m - msg.sender_lane_pos_m) > range_m) continue;
    if (predicate_ && !predicate_(sender, v, msg)) continue;
    recipients.insert(v.id);
  }

  auto key = [](const V2vMessage& m) { return std::tie(m.tick, m.sender_id); };
  for (const auto& id : recipients) {
    auto& box = inboxes_[id];
    auto pos = std::upper_bound(box.begin(), box.end(), msg, [&](const auto& a, const auto& b) {
      return key(a) < key(b);
    });
    box.insert(pos, msg);
    ++delivered_;
  }
  return recipients;
}

const std::vector<V2vMessage>& V2vChannel::inbox(std::string_view vehicle_id) const {
  static const std::vector<V2vMessage> empty;
  auto it = inboxes_.find(vehicle_id);
  return it == inboxes_.end() ? empty : it->second;
}

}  // namespace vanet

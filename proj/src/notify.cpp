#include "vanet/notify.hpp"

#include <cassert>

#include <fmt/format.h>

namespace vanet {

std::string render_family_alert(const CollisionReport& report) {
  auto body = fmt::format("COLLISION ALERT vehicle={} lat={:.5f} lon={:.5f} tick={}",
                          report.vehicle_id, report.location.lat_deg, report.location.lon_deg,
                          report.tick);
  assert(body.size() <= kMaxSmsBody);
  return body;
}

std::vector<SmsMessage> family_alert(const CollisionReport& report,
                                     const std::vector<std::string>& contacts) {
  std::vector<SmsMessage> out;
  if (contacts.empty()) return out;
  const std::string body = render_family_alert(report);
  out.reserve(contacts.size());
  for (const auto& phone : contacts) out.push_back({phone, body, report.tick});
  return out;
}

void Outbox::send(SmsMessage msg) {
  std::lock_guard lock(mutex_);
  entries_.push_back({std::move(msg), DeliveryStatus::Queued});
  entries_.back().status = DeliveryStatus::Sent;
}

std::vector<OutboxEntry> Outbox::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

std::size_t Outbox::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace vanet

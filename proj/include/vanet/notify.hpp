#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "vanet/dispatch.hpp"

namespace vanet {

struct SmsMessage {
  std::string to;
  std::string body;
  Tick tick = 0;

  friend bool operator==(const SmsMessage&, const SmsMessage&) = default;
};

inline constexpr std::size_t kMaxSmsBody = 320;

/// Renders "COLLISION ALERT vehicle=<id> lat=<lat> lon=<lon> tick=<tick>" with
/// five-decimal coordinates.
std::string render_family_alert(const CollisionReport& report);

/// One message per contact, all with the same body.
std::vector<SmsMessage> family_alert(const CollisionReport& report,
                                     const std::vector<std::string>& contacts);

enum class DeliveryStatus { Queued, Sent };

struct OutboxEntry {
  SmsMessage message;
  DeliveryStatus status = DeliveryStatus::Queued;
};

/// Stub GSM transport. Every send succeeds and is recorded in call order.
class Outbox {
 public:
  void send(SmsMessage msg);
  std::vector<OutboxEntry> entries() const;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::vector<OutboxEntry> entries_;
};

}  // namespace vanet

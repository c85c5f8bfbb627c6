#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vanet/geo.hpp"

namespace vanet {

enum class ResponderKind { Hospital, Police, Insurance };

std::string_view to_string(ResponderKind kind) noexcept;
std::optional<ResponderKind> parse_responder_kind(std::string_view text) noexcept;

struct Responder {
  std::string id;
  ResponderKind kind = ResponderKind::Hospital;
  std::string name;
  std::string phone;
  GeoCoordinate location;

  friend bool operator==(const Responder&, const Responder&) = default;
};

struct CollisionReport {
  std::string vehicle_id;
  GeoCoordinate location;
  Tick tick = 0;
  double vibration_peak_g = 0.0;
  std::optional<std::string> policy_id;

  friend bool operator==(const CollisionReport&, const CollisionReport&) = default;
};

struct DispatchPlan {
  Responder hospital;
  Responder police;
  std::optional<Responder> insurance;
  /// Responder id -> great-circle distance from the report location.
  std::map<std::string, double> distances_m;

  friend bool operator==(const DispatchPlan&, const DispatchPlan&) = default;
};

/// Responders known to the cloud server. Lookups on a const registry are safe
/// from any number of threads.
class ResponderRegistry {
 public:
  /// Throws DuplicateId, or ValidationError for an empty id or phone or an
  /// invalid location.
  void add(Responder r);

  const Responder* find(std::string_view id) const;
  const std::vector<Responder>& responders() const noexcept { return responders_; }
  std::size_t size() const noexcept { return responders_.size(); }
  bool empty() const noexcept { return responders_.empty(); }

  /// Closest responder of `kind` by haversine distance; ties go to the
  /// lexicographically smallest id. Throws NoResponderAvailable.
  const Responder& nearest(ResponderKind kind, const GeoCoordinate& location) const;

 private:
  std::vector<Responder> responders_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Value-returning form of ResponderRegistry::add.
ResponderRegistry register_responder(ResponderRegistry registry, Responder r);

/// Parses the seed format: one `id|kind|name|phone|lat|lon` record per line.
/// Blank lines and lines starting with '#' are skipped. Throws ParseError for
/// malformed lines and for records the registry rejects.
ResponderRegistry parse_registry(std::string_view text);

/// Reads and parses a seed file. Throws Error if the file cannot be read.
ResponderRegistry load_registry(const std::string& path);

std::string format_registry_line(const Responder& r);

struct DispatchRecord {
  std::uint64_t sequence_number = 0;
  CollisionReport report;
  DispatchPlan plan;

  friend bool operator==(const DispatchRecord&, const DispatchRecord&) = default;
};

/// Append-only record store. Sequence numbers start at 1 and are gap-free
/// under concurrent appends.
class DispatchStore {
 public:
  std::uint64_t append(CollisionReport report, DispatchPlan plan);
  std::vector<DispatchRecord> records() const;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::vector<DispatchRecord> records_;
};

/// Resolves the nearest hospital and police station (both mandatory) and,
/// when the report carries a policy id, the nearest insurer if one exists.
/// The plan is appended to `store` before returning.
DispatchPlan handle_report(const ResponderRegistry& registry, DispatchStore& store,
                           const CollisionReport& report);

}  // namespace vanet

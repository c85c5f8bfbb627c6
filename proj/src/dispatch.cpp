#include "vanet/dispatch.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "vanet/error.hpp"

namespace vanet {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string_view to_string(ResponderKind kind) noexcept {
  switch (kind) {
    case ResponderKind::Hospital: return "hospital";
    case ResponderKind::Police: return "police";
    case ResponderKind::Insurance: return "insurance";
  }
  return "hospital";
}

std::optional<ResponderKind> parse_responder_kind(std::string_view text) noexcept {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto k : {ResponderKind::Hospital, ResponderKind::Police, ResponderKind::Insurance}) {
    if (lower == to_string(k)) return k;
  }
  return std::nullopt;
}

void ResponderRegistry::add(Responder r) {
  if (r.id.empty()) throw ValidationError("responder.id", "must be non-empty");
  if (r.phone.empty()) throw ValidationError("responder." + r.id + ".phone", "must be non-empty");
  if (!is_valid(r.location))
    throw ValidationError("responder." + r.id + ".location", "out of range");
  for (const std::string* field : {&r.id, &r.name, &r.phone}) {
    if (field->find_first_of("|\r\n") != std::string::npos)
      throw ValidationError("responder." + r.id, "fields may not contain '|' or line breaks");
  }
  if (index_.count(r.id) != 0) throw DuplicateId(r.id);
  index_.emplace(r.id, responders_.size());
  responders_.push_back(std::move(r));
}

const Responder* ResponderRegistry::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &responders_[it->second];
}

const Responder& ResponderRegistry::nearest(ResponderKind kind,
                                            const GeoCoordinate& location) const {
  const Responder* best = nullptr;
  double best_d = 0.0;
  for (const auto& r : responders_) {
    if (r.kind != kind) continue;
    const double d = haversine_m(location, r.location);
    if (best == nullptr || d < best_d || (d == best_d && r.id < best->id)) {
      best = &r;
      best_d = d;
    }
  }
  if (best == nullptr)
    throw NoResponderAvailable(fmt::format("no {} responder registered", to_string(kind)));
  return *best;
}

ResponderRegistry register_responder(ResponderRegistry registry, Responder r) {
  registry.add(std::move(r));
  return registry;
}

ResponderRegistry parse_registry(std::string_view text) {
  ResponderRegistry registry;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
      const auto bar = line.find('|', start);
      fields.push_back(trim(line.substr(start, bar - start)));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    if (fields.size() != 6)
      throw ParseError(line_no, fmt::format("expected 6 '|'-separated fields, got {}",
                                            fields.size()));
    auto kind = parse_responder_kind(fields[1]);
    if (!kind) throw ParseError(line_no, fmt::format("unknown responder kind '{}'", fields[1]));
    auto lat = to_double(fields[4]);
    auto lon = to_double(fields[5]);
    if (!lat || !lon) throw ParseError(line_no, "lat/lon must be numbers");
    try {
      registry.add(Responder{std::string(fields[0]), *kind, std::string(fields[2]),
                             std::string(fields[3]), {*lat, *lon}});
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return registry;
}

ResponderRegistry load_registry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read registry file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

std::string format_registry_line(const Responder& r) {
  return fmt::format("{}|{}|{}|{}|{}|{}", r.id, to_string(r.kind), r.name, r.phone,
                     r.location.lat_deg, r.location.lon_deg);
}

std::uint64_t DispatchStore::append(CollisionReport report, DispatchPlan plan) {
  std::lock_guard lock(mutex_);
  const std::uint64_t seq = records_.size() + 1;
  records_.push_back({seq, std::move(report), std::move(plan)});
  return seq;
}

std::vector<DispatchRecord> DispatchStore::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::size_t DispatchStore::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

DispatchPlan handle_report(const ResponderRegistry& registry, DispatchStore& store,
                           const CollisionReport& report) {
  DispatchPlan plan{registry.nearest(ResponderKind::Hospital, report.location),
                    registry.nearest(ResponderKind::Police, report.location),
                    std::nullopt,
                    {}};
  if (report.policy_id) {
    try {
      plan.insurance = registry.nearest(ResponderKind::Insurance, report.location);
    } catch (const NoResponderAvailable&) {
    }
  }
  plan.distances_m[plan.hospital.id] = haversine_m(report.location, plan.hospital.location);
  plan.distances_m[plan.police.id] = haversine_m(report.location, plan.police.location);
  if (plan.insurance)
    plan.distances_m[plan.insurance->id] = haversine_m(report.location, plan.insurance->location);
  store.append(report, plan);
  return plan;
}

}  // namespace vanet

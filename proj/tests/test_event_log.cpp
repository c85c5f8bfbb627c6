#include <random>

#include <gtest/gtest.h>

#include "vanet/error.hpp"
#include "vanet/event_log.hpp"

using namespace vanet;

namespace {

EventRecord rec(Tick t, std::optional<std::string> v, EventKind k) { return {t, std::move(v), k, {}}; }

}  // namespace

TEST(EventLog, FormatsKeyValueLines) {
  EventLog log;
  log.records.push_back(rec(3, "car_a", EventKind::SmsSent));
  log.records.back().with("to", "+8801").with("body", "A B=C%D");
  log.records.push_back(rec(4, std::nullopt, EventKind::GeoFix));
  EXPECT_EQ(format_event_log(log),
            "tick=3 vehicle=car_a event=sms_sent to=+8801 body=A%20B%3DC%25D\n"
            "tick=4 vehicle=- event=geo_fix\n");
}

TEST(EventLog, ParseInvertsFormat) {
  std::mt19937_64 rng(3);
  const std::string alphabet = "ab =%\t\n|,.-_+Z9\xc3\xa9";
  for (int trial = 0; trial < 200; ++trial) {
    EventLog log;
    for (int i = 0, n = static_cast<int>(rng() % 20); i < n; ++i) {
      auto r = rec(static_cast<Tick>(rng() % 1000),
                   rng() % 5 ? std::optional<std::string>("v" + std::to_string(rng() % 9)) : std::nullopt,
                   kAllEventKinds[rng() % std::size(kAllEventKinds)]);
      for (int k = 0, nk = static_cast<int>(rng() % 4); k < nk; ++k) {
        std::string value;
        for (int c = 0, nc = static_cast<int>(rng() % 8); c < nc; ++c) value += alphabet[rng() % alphabet.size()];
        r.with("k" + std::to_string(k), value);
      }
      log.records.push_back(std::move(r));
    }
    ASSERT_EQ(parse_event_log(format_event_log(log)), log);
  }
}

TEST(EventLog, ParseErrors) {
  auto line_of = [](std::string_view text) {
    try {
      parse_event_log(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("tick=1 vehicle=a event=geo_fix\nnonsense\n"), 2u);
  EXPECT_EQ(line_of("tick=1 vehicle=a event=teleport\n"), 1u);
  EXPECT_EQ(line_of("vehicle=a tick=1 event=geo_fix\n"), 1u);
  EXPECT_EQ(line_of("tick=-4 vehicle=a event=geo_fix\n"), 1u);
  EXPECT_EQ(line_of("tick=1 vehicle=a event=geo_fix x=%G1\n"), 1u);
  EXPECT_EQ(line_of("tick=1 vehicle=a event=geo_fix x=%4\n"), 1u);
}

TEST(EventLog, CanonicalSortIsStable) {
  std::vector<EventRecord> rs{rec(2, "b", EventKind::SmsSent), rec(1, "b", EventKind::GeoFix),
                              rec(1, "a", EventKind::DispatchResolved), rec(1, "a", EventKind::IndicatorChange),
                              rec(1, std::nullopt, EventKind::SmsSent), rec(2, "b", EventKind::SmsSent)};
  rs[0].with("n", "first");
  rs[5].with("n", "second");
  sort_canonical(rs);
  EXPECT_EQ(rs[0].vehicle_id, std::nullopt);
  EXPECT_EQ(rs[1].kind, EventKind::IndicatorChange);
  EXPECT_EQ(rs[2].kind, EventKind::DispatchResolved);
  EXPECT_EQ(rs[3].vehicle_id, "b");
  EXPECT_EQ(*rs[4].get("n"), "first");
  EXPECT_EQ(*rs[5].get("n"), "second");
}

TEST(Summarize, EmptyLog) {
  const auto s = summarize({});
  ASSERT_EQ(s.counts.size(), std::size(kAllEventKinds));
  for (const auto& [kind, n] : s.counts) EXPECT_EQ(n, 0u);
  EXPECT_TRUE(s.max_severity.empty());
  EXPECT_TRUE(s.time_to_dispatch.empty());
}

TEST(Summarize, EscalationAndSuppression) {
  EventLog log;
  log.records.push_back(rec(0, "a", EventKind::IndicatorChange));
  log.records.back().with("level", "warning");
  log.records.push_back(rec(4, "a", EventKind::IndicatorChange));
  log.records.back().with("level", "critical");
  log.records.push_back(rec(5, "a", EventKind::IndicatorChange));
  log.records.back().with("level", "caution");
  log.records.push_back(rec(4, "a", EventKind::CollisionDetected));
  log.records.push_back(rec(4, "b", EventKind::CollisionDetected));
  log.records.push_back(rec(34, "a", EventKind::Escalated));
  log.records.push_back(rec(34, "a", EventKind::DispatchResolved));
  const auto s = summarize(log);
  EXPECT_EQ(s.counts.at(EventKind::CollisionDetected), 2u);
  EXPECT_EQ(s.counts.at(EventKind::IndicatorChange), 3u);
  EXPECT_EQ(s.max_severity.at("a"), ProximityLevel::Critical);
  EXPECT_EQ(s.time_to_dispatch.at("a"), 30);
  EXPECT_EQ(s.time_to_dispatch.at("b"), std::nullopt);
  EXPECT_NE(format_summary(s).find("time_to_dispatch.b=none"), std::string::npos);
}

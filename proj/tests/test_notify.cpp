#include <gtest/gtest.h>

#include "vanet/notify.hpp"

using namespace vanet;

namespace {
const CollisionReport kReport{"car_a", {23.8103, 90.4125}, 37, 8.0, std::nullopt};
}

TEST(FamilyAlert, FansOutToEveryContact) {
  const auto msgs = family_alert(kReport, {"+8801", "+8802"});
  ASSERT_EQ(msgs.size(), 2u);
  EXPECT_EQ(msgs[0].to, "+8801");
  EXPECT_EQ(msgs[1].to, "+8802");
  EXPECT_EQ(msgs[0].body, msgs[1].body);
  EXPECT_EQ(msgs[0].tick, 37);
}

TEST(FamilyAlert, NoContactsNoMessages) { EXPECT_TRUE(family_alert(kReport, {}).empty()); }

TEST(FamilyAlert, TemplateRendering) {
  EXPECT_EQ(render_family_alert(kReport),
            "COLLISION ALERT vehicle=car_a lat=23.81030 lon=90.41250 tick=37");
  const CollisionReport south{"v-9", {-0.000004, -179.999996}, 0, 9.0, std::nullopt};
  EXPECT_EQ(render_family_alert(south),
            "COLLISION ALERT vehicle=v-9 lat=-0.00000 lon=-180.00000 tick=0");
}

TEST(FamilyAlert, PureAndBounded) {
  const CollisionReport worst{std::string(64, 'x'), {-89.999999, -179.999999},
                              9'223'372'036'854'775'807LL, 8.0, std::nullopt};
  const auto a = render_family_alert(worst);
  EXPECT_EQ(a, render_family_alert(worst));
  EXPECT_LE(a.size(), kMaxSmsBody);
  for (std::size_t n = 0; n < 6; ++n)
    EXPECT_EQ(family_alert(kReport, std::vector<std::string>(n, "+1")).size(), n);
}

TEST(Outbox, AppendsInCallOrderWithoutDedup) {
  Outbox box;
  const SmsMessage m1{"+1", "one", 1};
  const SmsMessage m2{"+2", "two", 1};
  box.send(m1);
  box.send(m2);
  box.send(m1);
  const auto entries = box.entries();
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].message, m1);
  EXPECT_EQ(entries[1].message, m2);
  EXPECT_EQ(entries[2].message, m1);
  for (const auto& e : entries) EXPECT_EQ(e.status, DeliveryStatus::Sent);
}

TEST(Outbox, InterleavedVehiclesKeepCallOrder) {
  Outbox box;
  std::vector<SmsMessage> expected;
  for (int i = 0; i < 10; ++i) {
    const CollisionReport r{i % 2 ? "a" : "b", {1.0, 2.0}, i, 8.0, std::nullopt};
    for (auto& m : family_alert(r, {"+1" + std::to_string(i)})) {
      expected.push_back(m);
      box.send(m);
    }
  }
  const auto entries = box.entries();
  ASSERT_EQ(entries.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(entries[i].message, expected[i]);
}

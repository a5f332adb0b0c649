#include <gtest/gtest.h>

#include "expect_code.hpp"
#include "usn/device/device.hpp"
#include "usn/sn/social_network.hpp"
#include "usn/ubiserv/ubiserv.hpp"
#include "usn/world/world.hpp"

namespace usn::device {
namespace {

ServedProfile served(FieldMap fields) { return ServedProfile{SocialUserId::parse("student"), std::move(fields)}; }

TEST(Render, JobFairProfileGivesFiveLinesNameFirst) {
  auto record = render(served({{ProfileField::ContactInfo, "s@uni.edu"},
                               {ProfileField::JobInterest, "backend"},
                               {ProfileField::Qualifications, "BSc CS"},
                               {ProfileField::Name, "Sam"},
                               {ProfileField::Experience, "2 internships"}}));
  using L = std::vector<std::pair<std::string, std::string>>;
  EXPECT_EQ(record.lines, (L{{"Name", "Sam"},
                             {"Contact", "s@uni.edu"},
                             {"Qualifications", "BSc CS"},
                             {"Experience", "2 internships"},
                             {"Job interest", "backend"}}));
  EXPECT_EQ(record.target_user_id.str(), "student");
}

TEST(Render, EmptyProfileGivesEmptyRecord) {
  auto record = render(served({}));
  EXPECT_TRUE(record.lines.empty());
  EXPECT_EQ(to_json(record).dump(), R"({"lines":[],"target_user_id":"student"})");
}

TEST(Render, IsPureAndByteStable) {
  FieldMap all;
  for (auto f : kAllProfileFields) all[f] = std::string(to_string(f)) + "!";
  auto a = to_json(render(served(all))).dump();
  auto b = to_json(render(served(all))).dump();
  EXPECT_EQ(a, b);
  auto record = render(served(all));
  ASSERT_EQ(record.lines.size(), 8u);
  for (std::size_t i = 0; i < kAllProfileFields.size(); ++i) {
    EXPECT_EQ(record.lines[i].first, label_for(kAllProfileFields[i]));
  }
  EXPECT_EQ(to_json(render(served({{ProfileField::Name, "A"}}))).dump(),
            R"({"lines":[["Name","A"]],"target_user_id":"student"})");
}

class DeviceStack : public ::testing::Test {
 protected:
  void SetUp() override {
    sn.create_user(UserProfile(SocialUserId::parse("expert"), expert_id,
                               {{ProfileField::Name, "Dr. E"},
                                {ProfileField::Location, "Oslo"},
                                {ProfileField::WorkDomain, "compilers"},
                                {ProfileField::ContactInfo, "e@x"},
                                {ProfileField::Experience, "20y"}}));
    sn.create_user(UserProfile(SocialUserId::parse("attendee"), attendee_id, {{ProfileField::Name, "Ann"}}));
    auto expert = SocialUserId::parse("expert");
    sn.set_view_policy(expert, {expert, ViewContext::UbiServEvent,
                                {ProfileField::Name, ProfileField::Location, ProfileField::WorkDomain,
                                 ProfileField::ContactInfo}});
    ubiserv::UbiServConfig cfg;
    cfg.area = area;
    cfg.ubiserv_id = "u-hall";
    cfg.secret = "0123456789abcdef";
    server = std::make_unique<ubiserv::UbiServ>(cfg, sn_api, clock, 1);
    ubi = std::make_shared<LocalUbiServEndpoint>(*server);
    radio = std::make_shared<LocalWorldEndpoint>(world);
    world.place_device(attendee_id, {0, 0}, 0);
    world.place_device(expert_id, {2, 0}, 3.14159);
  }

  std::shared_ptr<ManualClock> clock = std::make_shared<ManualClock>();
  sn::SocialNetwork sn{clock};
  std::shared_ptr<ubiserv::InProcessSocialNetworkApi> sn_api = std::make_shared<ubiserv::InProcessSocialNetworkApi>(sn);
  ServiceArea area{"hall", "Hall", Bounds{-10, -10, 10, 10}};
  world::World world{area};
  std::unique_ptr<ubiserv::UbiServ> server;
  std::shared_ptr<LocalUbiServEndpoint> ubi;
  std::shared_ptr<LocalWorldEndpoint> radio;
  UsndId expert_id = UsndId::parse("USND-000000E0");
  UsndId attendee_id = UsndId::parse("USND-000000A0");
};

TEST_F(DeviceStack, ConferencePointShowsTheFourAllowedLines) {
  Device attendee(attendee_id), expert(expert_id);
  attendee.attach(ubi, radio);
  expert.attach(ubi, radio);
  auto record = attendee.point_and_request();
  using L = std::vector<std::pair<std::string, std::string>>;
  EXPECT_EQ(record.lines, (L{{"Name", "Dr. E"}, {"Location", "Oslo"}, {"Work domain", "compilers"}, {"Contact", "e@x"}}));
  EXPECT_EQ(attendee.state().last_display, record);
}

TEST_F(DeviceStack, EmptyPolicyIsAnEmptyRecordNotAnError) {
  auto expert = SocialUserId::parse("expert");
  sn.set_view_policy(expert, {expert, ViewContext::UbiServEvent, {}});
  Device attendee(attendee_id), target(expert_id);
  attendee.attach(ubi, radio);
  target.attach(ubi, radio);
  auto record = attendee.point_and_request();
  EXPECT_TRUE(record.lines.empty());
  EXPECT_EQ(record.target_user_id.str(), "expert");
}

TEST_F(DeviceStack, AttachAndScan) {
  Device attendee(attendee_id);
  EXPECT_FALSE(attendee.attached());
  const auto& state = attendee.attach(ubi, radio);
  ASSERT_TRUE(state.session);
  EXPECT_EQ(state.session->area_id, "hall");
  auto first = state.session->session_token;
  attendee.attach(ubi, radio);
  EXPECT_NE(attendee.state().session->session_token, first);
  EXPECT_EQ(server->registered_count(), 1u);
  EXPECT_EQ(attendee.scan(), world.neighbors(attendee_id));
  EXPECT_EQ(attendee.scan(), std::vector<UsndId>{expert_id});
  world.step(std::vector<world::Move>{{expert_id, {9, 9}, 0}});
  EXPECT_TRUE(attendee.scan().empty());
}

TEST_F(DeviceStack, UnreachableUbiServLeavesStateUnchanged) {
  Device attendee(attendee_id);
  ubi->set_reachable(false);
  EXPECT_CODE(UbiServUnreachable, attendee.attach(ubi, radio));
  EXPECT_FALSE(attendee.attached());
  ubi->set_reachable(true);
  attendee.attach(ubi, radio);
  auto token = attendee.state().session->session_token;
  ubi->set_reachable(false);
  EXPECT_CODE(UbiServUnreachable, attendee.attach(ubi, radio));
  EXPECT_EQ(attendee.state().session->session_token, token);
}

TEST_F(DeviceStack, DetachedDeviceIsNotAttached) {
  Device attendee(attendee_id);
  EXPECT_CODE(NotAttached, attendee.scan());
  EXPECT_CODE(NotAttached, attendee.point_and_request());
  EXPECT_CODE(NotAttached, attendee.request(expert_id));
  EXPECT_CODE(NotAttached, attendee.set_service_enabled(false));
  EXPECT_CODE(NotAttached, attendee.detach());
  attendee.attach(ubi, radio);
  attendee.detach();
  EXPECT_FALSE(attendee.attached());
  EXPECT_CODE(NotAttached, attendee.scan());
  EXPECT_CODE(MalformedId, Device("USND-xyz"));
}

// Faults injected at each layer surface at the device with the same code.
TEST_F(DeviceStack, ErrorsPassThroughVerbatim) {
  Device attendee(attendee_id), expert(expert_id);
  attendee.attach(ubi, radio);

  EXPECT_CODE(TargetNotPresent, attendee.point_and_request());
  expert.attach(ubi, radio);
  expert.set_service_enabled(false);
  EXPECT_CODE(ServiceDisabled, attendee.point_and_request());
  expert.set_service_enabled(true);

  world.set_beacon(expert_id, false);
  EXPECT_CODE(NoTarget, attendee.point_and_request());
  world.set_beacon(expert_id, true);

  sn_api->set_reachable(false);
  EXPECT_CODE(UpstreamUnavailable, attendee.point_and_request());
  sn_api->set_reachable(true);

  ubi->set_reachable(false);
  EXPECT_CODE(UbiServUnreachable, attendee.point_and_request());
  ubi->set_reachable(true);

  Device ghost(UsndId::parse("USND-00000666"));
  ghost.attach(ubi, radio);
  EXPECT_CODE(UnknownDevice, ghost.scan());
  EXPECT_CODE(UnknownDevice, attendee.request(ghost.usnd_id()));

  server->register_usnd(attendee_id);  // revokes the device's token
  EXPECT_CODE(UnknownSession, attendee.point_and_request());
  EXPECT_EQ(attendee.state().last_display, std::nullopt);
}

}  // namespace
}  // namespace usn::device

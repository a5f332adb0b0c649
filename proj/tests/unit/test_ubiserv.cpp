#include <random>
#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "expect_code.hpp"
#include "usn/sn/social_network.hpp"
#include "usn/ubiserv/ubiserv.hpp"

namespace usn::ubiserv {
namespace {

const std::string kSecret = "area-secret-0123456789";

UbiServConfig config_for(const std::string& area_id, std::int64_t cache_ttl = 30) {
  UbiServConfig c;
  c.area = ServiceArea{area_id, "Hall " + area_id, Bounds{0, 0, 50, 50}};
  c.ubiserv_id = "ubiserv-" + area_id;
  c.secret = kSecret;
  c.cache_ttl_seconds = cache_ttl;
  return c;
}

/// Counts calls and can rewrite the SN's answers to model token trouble.
class CountingApi final : public SocialNetworkApi {
 public:
  explicit CountingApi(sn::SocialNetwork& n) : inner_(n) {}

  void register_ubiserv(const std::string& id, const std::string& s) override {
    ++registers;
    inner_.register_ubiserv(id, s);
  }
  SnGrant authenticate(const std::string& id, const std::string& s) override {
    ++auths;
    return inner_.authenticate(id, s);
  }
  SocialUserId lookup_user_by_usnd(const std::string& t, const UsndId& u) override {
    if (reject_next) {
      reject_next = false;
      throw Error(*reject_next_code);
    }
    return inner_.lookup_user_by_usnd(t, u);
  }
  ServedProfile serve_ubiserv_request(const std::string& t, const SocialUserId& u) override {
    return inner_.serve_ubiserv_request(t, u);
  }
  void set_reachable(bool r) { inner_.set_reachable(r); }

  int registers = 0;
  int auths = 0;
  bool reject_next = false;
  std::optional<ErrorCode> reject_next_code;

 private:
  InProcessSocialNetworkApi inner_;
};

class UbiServTest : public ::testing::Test {
 protected:
  void SetUp() override {
    sn.create_user(make("expert", 0xE0, {{ProfileField::WorkDomain, "compilers"},
                                         {ProfileField::ContactInfo, "e@x"},
                                         {ProfileField::Location, "Oslo"}}));
    sn.create_user(make("attendee", 0xA0, {}));
    sn.set_view_policy(SocialUserId::parse("expert"),
                       {SocialUserId::parse("expert"), ViewContext::UbiServEvent,
                        {ProfileField::Name, ProfileField::WorkDomain}});
  }

  static UserProfile make(const std::string& user, std::uint32_t dev, FieldMap f) {
    f.try_emplace(ProfileField::Name, user + " name");
    return UserProfile(SocialUserId::parse(user), UsndId::from_number(dev), std::move(f));
  }

  std::unique_ptr<UbiServ> server(const std::string& area, std::int64_t ttl = 30) {
    return std::make_unique<UbiServ>(config_for(area, ttl), api, clock, ++next_seed);
  }

  std::shared_ptr<ManualClock> clock = std::make_shared<ManualClock>();
  sn::SocialNetwork sn{clock, {.token_ttl_seconds = 3600, .store_path = {}, .token_seed = 9}};
  std::shared_ptr<CountingApi> api = std::make_shared<CountingApi>(sn);
  std::uint64_t next_seed = 0;
  const UsndId expert = UsndId::from_number(0xE0);
  const UsndId attendee = UsndId::from_number(0xA0);
};

TEST_F(UbiServTest, RegisterIssuesFreshSessionsAndRevokesOld) {
  auto u = server("hall");
  auto first = u->register_usnd(attendee);
  EXPECT_TRUE(first.service_enabled);
  EXPECT_EQ(first.area_id, "hall");
  EXPECT_EQ(first.session_token.size(), 32u);
  auto second = u->register_usnd(attendee);
  EXPECT_NE(second.session_token, first.session_token);
  EXPECT_EQ(u->registered_count(), 1u);
  u->register_usnd(expert);
  EXPECT_CODE(UnknownSession, u->handle_profile_request(first.session_token, expert));
  EXPECT_CODE(UnknownSession, u->set_service_enabled(first.session_token, false));
  EXPECT_CODE(UnknownSession, u->deregister_usnd(first.session_token));
  EXPECT_NO_THROW(u->handle_profile_request(second.session_token, expert));
  EXPECT_EQ(u->registered_count(), 2u);
  EXPECT_TRUE(u->registry_consistent());
}

TEST_F(UbiServTest, SessionTokensNeverRepeat) {
  auto u = server("hall");
  std::set<std::string> seen;
  for (std::uint32_t i = 0; i < 3000; ++i) {
    ASSERT_TRUE(seen.insert(u->register_usnd(UsndId::from_number(i % 7)).session_token).second);
  }
  EXPECT_EQ(u->registered_count(), 7u);
  EXPECT_TRUE(u->registry_consistent());
}

TEST_F(UbiServTest, DeregisterRules) {
  auto u = server("hall");
  auto a = u->register_usnd(attendee);
  auto e = u->register_usnd(expert);
  u->deregister_usnd(e.session_token);
  EXPECT_CODE(TargetNotPresent, u->handle_profile_request(a.session_token, expert));
  EXPECT_CODE(UnknownSession, u->deregister_usnd(e.session_token));
  u->deregister_usnd(a.session_token);
  EXPECT_CODE(UnknownSession, u->handle_profile_request(a.session_token, expert));
  EXPECT_EQ(u->registered_count(), 0u);
}

TEST_F(UbiServTest, OptOutBlocksBeingQueriedNotQuerying) {
  auto u = server("hall");
  auto a = u->register_usnd(attendee);
  auto e = u->register_usnd(expert);
  u->set_service_enabled(e.session_token, false);
  EXPECT_CODE(ServiceDisabled, u->handle_profile_request(a.session_token, expert));
  EXPECT_EQ(u->handle_profile_request(e.session_token, attendee).user_id.str(), "attendee");
  u->set_service_enabled(e.session_token, true);
  EXPECT_EQ(u->handle_profile_request(a.session_token, expert).user_id.str(), "expert");
}

TEST_F(UbiServTest, ServedFieldsMatchDirectEvaluation) {
  auto u = server("hall");
  auto a = u->register_usnd(attendee);
  u->register_usnd(expert);
  auto served = u->handle_profile_request(a.session_token, expert);

  auto store = sn.snapshot();
  auto user = *store.find_user_by_usnd(expert);
  auto oracle = evaluate_permissions(*store.find_profile(user), *store.find_policy(user, ViewContext::UbiServEvent));
  EXPECT_EQ(served, oracle);
  EXPECT_EQ(served.fields.size(), 2u);
}

TEST_F(UbiServTest, TargetNeverRegisteredHereIsNotPresent) {
  auto u = server("hall");
  auto a = u->register_usnd(attendee);
  EXPECT_CODE(TargetNotPresent, u->handle_profile_request(a.session_token, expert));
}

TEST_F(UbiServTest, UnboundDeviceSurfacesUnknownDevice) {
  auto u = server("hall");
  auto a = u->register_usnd(attendee);
  u->register_usnd(UsndId::from_number(0x99));
  EXPECT_CODE(UnknownDevice, u->handle_profile_request(a.session_token, UsndId::from_number(0x99)));
}

// Every combination of (requester registered, target registered, target
// enabled). Only the all-true row is served; the rest fail with the code of
// the first false conjunct.
TEST_F(UbiServTest, AuthorizationConjunctionTruthTable) {
  for (int mask = 0; mask < 8; ++mask) {
    const bool req_reg = mask & 1;
    const bool tgt_reg = mask & 2;
    const bool tgt_on = mask & 4;
    auto u = server("hall");
    std::string token = "0123456789abcdef0123456789abcdef";
    if (req_reg) token = u->register_usnd(attendee).session_token;
    if (tgt_reg) {
      auto t = u->register_usnd(expert);
      if (!tgt_on) u->set_service_enabled(t.session_token, false);
    }
    SCOPED_TRACE(testing::Message() << "req=" << req_reg << " tgt=" << tgt_reg << " on=" << tgt_on);
    if (!req_reg) {
      EXPECT_CODE(UnknownSession, u->handle_profile_request(token, expert));
    } else if (!tgt_reg) {
      EXPECT_CODE(TargetNotPresent, u->handle_profile_request(token, expert));
    } else if (!tgt_on) {
      EXPECT_CODE(ServiceDisabled, u->handle_profile_request(token, expert));
    } else {
      EXPECT_EQ(u->handle_profile_request(token, expert).user_id.str(), "expert");
    }
  }
}

TEST_F(UbiServTest, CacheServesRepeatRequestsWithinTtl) {
  auto u = server("hall", 30);
  auto a = u->register_usnd(attendee);
  u->register_usnd(expert);
  u->handle_profile_request(a.session_token, expert);
  clock->advance(seconds(29));
  u->handle_profile_request(a.session_token, expert);
  EXPECT_EQ(sn.serve_count(), 1u);
  EXPECT_EQ(sn.lookup_count(), 1u);
  clock->advance(seconds(1));
  u->handle_profile_request(a.session_token, expert);
  EXPECT_EQ(sn.serve_count(), 2u);
}

TEST_F(UbiServTest, ExpiredCacheServesUpdatedPolicy) {
  auto u = server("hall", 10);
  auto a = u->register_usnd(attendee);
  u->register_usnd(expert);
  EXPECT_EQ(u->handle_profile_request(a.session_token, expert).fields.size(), 2u);
  auto id = SocialUserId::parse("expert");
  sn.set_view_policy(id, {id, ViewContext::UbiServEvent, {ProfileField::Name, ProfileField::ContactInfo,
                                                          ProfileField::Location}});
  EXPECT_EQ(u->handle_profile_request(a.session_token, expert).fields.size(), 2u);
  clock->advance(seconds(10));
  auto updated = u->handle_profile_request(a.session_token, expert);
  EXPECT_EQ(updated.fields.size(), 3u);
  EXPECT_EQ(updated.fields.at(ProfileField::ContactInfo), "e@x");
}

// Revoke at a random offset inside the cache window: every response before
// the revocation shows the field, and from revocation + TTL onward it is gone.
TEST_F(UbiServTest, StaleBoundUnderManualClock) {
  constexpr std::int64_t kTtl = 2;
  std::mt19937_64 rng(3);
  auto id = SocialUserId::parse("expert");
  for (int trial = 0; trial < 50; ++trial) {
    sn.set_view_policy(id, {id, ViewContext::UbiServEvent, {ProfileField::Name, ProfileField::WorkDomain}});
    auto u = server("hall", kTtl);
    auto a = u->register_usnd(attendee);
    u->register_usnd(expert);
    const auto step = std::chrono::milliseconds(100);
    const int warm = static_cast<int>(rng() % 40);
    for (int i = 0; i < warm; ++i) {
      ASSERT_TRUE(u->handle_profile_request(a.session_token, expert).fields.contains(ProfileField::WorkDomain));
      clock->advance(step);
    }
    sn.set_view_policy(id, {id, ViewContext::UbiServEvent, {ProfileField::Name}});
    const auto revoked = clock->now();
    for (int i = 0; i < 40; ++i) {
      const bool shows = u->handle_profile_request(a.session_token, expert).fields.contains(ProfileField::WorkDomain);
      if (clock->now() - revoked >= seconds(kTtl)) {
        ASSERT_FALSE(shows) << "stale after the bound";
      }
      clock->advance(step);
    }
  }
}

TEST_F(UbiServTest, SnDownWithColdCacheIsUpstreamUnavailable) {
  auto u = server("hall");
  auto a = u->register_usnd(attendee);
  u->register_usnd(expert);
  api->set_reachable(false);
  EXPECT_CODE(UpstreamUnavailable, u->handle_profile_request(a.session_token, expert));
  api->set_reachable(true);
  EXPECT_NO_THROW(u->handle_profile_request(a.session_token, expert));
  api->set_reachable(false);
  EXPECT_NO_THROW(u->handle_profile_request(a.session_token, expert));
}

TEST_F(UbiServTest, RegistersLazilyAndAuthenticatesOnce) {
  auto u = server("hall");
  EXPECT_EQ(api->auths, 0);
  auto a = u->register_usnd(attendee);
  u->register_usnd(expert);
  u->handle_profile_request(a.session_token, expert);
  u->handle_profile_request(a.session_token, attendee);
  EXPECT_EQ(api->registers, 1);
  EXPECT_EQ(api->auths, 2);  // first attempt UnknownUbiServ, then success
  EXPECT_TRUE(sn.snapshot().find_ubiserv("ubiserv-hall") != nullptr);
}

TEST_F(UbiServTest, ReauthenticatesAfterTokenExpiry) {
  auto u = server("hall", 0);
  auto a = u->register_usnd(attendee);
  u->register_usnd(expert);
  u->handle_profile_request(a.session_token, expert);
  const int before = api->auths;
  clock->advance(seconds(3600));
  EXPECT_EQ(u->handle_profile_request(a.session_token, expert).user_id.str(), "expert");
  EXPECT_EQ(api->auths, before + 1);
}

TEST_F(UbiServTest, RetriesOnceWhenSnRejectsToken) {
  auto u = server("hall", 0);
  auto a = u->register_usnd(attendee);
  u->register_usnd(expert);
  u->handle_profile_request(a.session_token, expert);
  const int before = api->auths;
  api->reject_next = true;
  api->reject_next_code = ErrorCode::ExpiredToken;
  EXPECT_EQ(u->handle_profile_request(a.session_token, expert).user_id.str(), "expert");
  EXPECT_EQ(api->auths, before + 1);
}

TEST_F(UbiServTest, ForeignSessionTokenIsUnknownHere) {
  auto hall = server("hall");
  auto annex = server("annex");
  auto at_annex = annex->register_usnd(attendee);
  hall->register_usnd(expert);
  EXPECT_CODE(UnknownSession, hall->handle_profile_request(at_annex.session_token, expert));
}

// Devices are split between two servers and perform random interleavings of
// (re)registration, deregistration and requests. A request at one server must
// never return the profile of a device only registered at the other.
TEST_F(UbiServTest, CrossAreaIsolationProperty) {
  std::vector<UsndId> devices;
  for (std::uint32_t i = 0; i < 12; ++i) {
    auto d = UsndId::from_number(0x100 + i);
    sn.create_user(make("user" + std::to_string(i), 0x100 + i, {{ProfileField::ContactInfo, "c" + std::to_string(i)}}));
    devices.push_back(d);
  }
  std::mt19937_64 rng(77);
  for (int run = 0; run < 20; ++run) {
    std::array<std::unique_ptr<UbiServ>, 2> servers{server("hall"), server("annex")};
    std::map<UsndId, std::pair<int, std::string>> where;
    for (int op = 0; op < 200; ++op) {
      const auto& d = devices[rng() % devices.size()];
      const int s = static_cast<int>(rng() % 2);
      switch (rng() % 4) {
        case 0:
          if (!where.contains(d)) where[d] = {s, servers[s]->register_usnd(d).session_token};
          break;
        case 1:
          if (where.contains(d)) {
            servers[where[d].first]->deregister_usnd(where[d].second);
            where.erase(d);
          }
          break;
        default: {
          if (!where.contains(d)) break;
          const auto& target = devices[rng() % devices.size()];
          const auto [home, token] = where[d];
          for (int at = 0; at < 2; ++at) {
            const bool target_here = where.contains(target) && where[target].first == at;
            try {
              auto served = servers[at]->handle_profile_request(token, target);
              ASSERT_EQ(at, home);
              ASSERT_TRUE(target_here);
            } catch (const Error& e) {
              if (at != home) ASSERT_EQ(e.code(), ErrorCode::UnknownSession);
              else ASSERT_FALSE(target_here);
            }
          }
        }
      }
    }
  }
}

TEST_F(UbiServTest, ConcurrentRequestsSeeConsistentRegistry) {
  auto u = server("hall");
  auto a = u->register_usnd(attendee);
  u->register_usnd(expert);
  std::atomic<int> bad{0};
  std::thread flipper([&] {
    for (int i = 0; i < 2000; ++i) {
      auto e = u->register_usnd(expert);
      u->set_service_enabled(e.session_token, i % 2 == 0);
    }
  });
  std::thread reader([&] {
    for (int i = 0; i < 2000; ++i) {
      try {
        u->handle_profile_request(a.session_token, expert);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ServiceDisabled) ++bad;
      }
    }
  });
  flipper.join();
  reader.join();
  EXPECT_EQ(bad.load(), 0);
  EXPECT_TRUE(u->registry_consistent());
}

TEST(UbiServConfigTest, ParsesAndRejects) {
  auto j = nlohmann::json::parse(R"({"area_id":"hall","name":"Main hall","bounds":{"min_x":0,"min_y":0,"max_x":40,"max_y":30},
    "sn_base_url":"http://127.0.0.1:7001","ubiserv_id":"u-hall","secret":"0123456789abcdef","cache_ttl_seconds":2,"token_ttl_seconds":60})");
  auto c = UbiServConfig::from_json(j);
  EXPECT_EQ(c.area.area_id, "hall");
  EXPECT_EQ(c.cache_ttl_seconds, 2);
  EXPECT_EQ(c.token_ttl_seconds, 60);
  j["bounds"]["max_x"] = -1;
  EXPECT_CODE(ConfigError, UbiServConfig::from_json(j));
  j.erase("bounds");
  EXPECT_CODE(ConfigError, UbiServConfig::from_json(j));
}

}  // namespace
}  // namespace usn::ubiserv

#include "usn/harness/fixtures.hpp"

#include <fstream>
#include <set>

#include "usn/core/error.hpp"
#include "usn/net/json_client.hpp"
#include "usn/sn/social_network.hpp"

namespace usn::harness {

Fixtures parse_fixtures(const nlohmann::json& j) {
  Fixtures out;
  try {
    if (!j.is_object() || j.value("schema", 0) != 1) {
      throw Error(ErrorCode::FixtureParseError, "fixtures need {\"schema\": 1}");
    }
    std::set<std::string> users;
    std::set<std::string> devices;
    for (const auto& p : j.at("profiles")) {
      FixtureEntry entry{user_profile_from_json(p), std::nullopt};
      if (p.contains("policy")) entry.event_policy = field_set_from_json(p.at("policy"));
      if (!users.insert(entry.profile.user_id().str()).second ||
          !devices.insert(entry.profile.usnd_id().str()).second) {
        throw Error(ErrorCode::FixtureParseError, "duplicate user or device " + entry.profile.user_id().str());
      }
      out.entries.push_back(std::move(entry));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FixtureParseError) throw;
    throw Error(ErrorCode::FixtureParseError, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FixtureParseError, e.what());
  }
  return out;
}

Fixtures load_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FixtureParseError, "cannot open " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::FixtureParseError, path.string() + " is not valid JSON");
  return parse_fixtures(j);
}

std::size_t apply_fixtures(sn::SocialNetwork& network, const Fixtures& fixtures) {
  for (const auto& e : fixtures.entries) {
    network.create_user(e.profile);
    if (e.event_policy) {
      network.set_view_policy(e.profile.user_id(),
                              ViewPolicy{e.profile.user_id(), ViewContext::UbiServEvent, *e.event_policy});
    }
  }
  return fixtures.entries.size();
}

std::size_t seed_fixtures(const std::string& sn_base_url, const std::filesystem::path& fixture_path) {
  const auto fixtures = load_fixtures(fixture_path);
  net::JsonClient client(sn_base_url, ErrorCode::UpstreamUnavailable);
  for (const auto& e : fixtures.entries) {
    client.post("/users", to_json(e.profile));
    if (e.event_policy) {
      client.put("/users/" + e.profile.user_id().str() + "/policy",
                 {{"context", "ubiserv_event"}, {"allowed_fields", field_set_to_json(*e.event_policy)}});
    }
  }
  return fixtures.entries.size();
}

}  // namespace usn::harness

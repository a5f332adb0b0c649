#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "usn/core/profile.hpp"

namespace usn::sn {
class SocialNetwork;
}

namespace usn::harness {

struct FixtureEntry {
  UserProfile profile;
  /// UbiServEvent view; absent means the user never set one.
  std::optional<FieldSet> event_policy;
};

/// `{"schema": 1, "profiles": [{user_id, usnd_id, fields, policy?}, ...]}`
struct Fixtures {
  std::vector<FixtureEntry> entries;
};

/// Validates the whole document before returning. Throws FixtureParseError.
Fixtures parse_fixtures(const nlohmann::json& j);
Fixtures load_fixtures(const std::filesystem::path& path);

/// Writes every entry into an in-process network. Returns the entry count.
std::size_t apply_fixtures(sn::SocialNetwork& network, const Fixtures& fixtures);

/// Seeds a running social network over its JSON API. The file is fully
/// parsed first, so a malformed file writes nothing. Idempotent.
/// Throws FixtureParseError, UpstreamUnavailable.
std::size_t seed_fixtures(const std::string& sn_base_url, const std::filesystem::path& fixture_path);

}  // namespace usn::harness

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "usn/core/area.hpp"
#include "usn/harness/fixtures.hpp"
#include "usn/world/geometry.hpp"

namespace usn::harness {

struct AreaSpec {
  ServiceArea area;
  world::WorldParams params;
  std::int64_t cache_ttl_seconds = 30;
};

struct ActorSpec {
  std::string name;
  UsndId usnd_id;
  std::string area_id;
  Vec2 position;
  double heading = 0.0;
};

/// Background attendees: generated profiles placed uniformly at random in
/// `region` using the scenario seed.
struct CrowdSpec {
  std::string area_id;
  std::size_t count = 0;
  Bounds region;
  std::string prefix = "guest";
  FieldSet policy = {ProfileField::Name};
};

enum class Action {
  Attach,
  Deregister,
  Move,
  Point,
  Request,
  Scan,
  SetPolicy,
  OptOut,
  Beacon,
  AdvanceClock,
  SnOutage,
  Parallel,
  Assert,
};

std::string_view to_string(Action action) noexcept;

struct Step {
  std::string id;
  Action action;
  /// Actor names this step touches (empty for global steps).
  std::vector<std::string> actors;
  /// The raw step object; action-specific keys are read from here.
  nlohmann::json args;
  std::vector<Step> group;
};

/// Versioned (`schema: 1`) JSON scenario script.
struct ScenarioScript {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<AreaSpec> areas;
  Fixtures fixtures;
  std::vector<ActorSpec> actors;
  std::optional<CrowdSpec> crowd;
  std::vector<Step> steps;

  const AreaSpec* find_area(const std::string& area_id) const;
  const ActorSpec* find_actor(const std::string& name) const;
};

/// Fixture paths are resolved against `base_dir`. Throws ScriptParseError
/// (or FixtureParseError for a bad fixture file).
ScenarioScript parse_scenario(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ScenarioScript load_scenario(const std::filesystem::path& path);

/// The crowd's actors and fixture entries, derived from the seed.
struct CrowdMembers {
  std::vector<ActorSpec> actors;
  std::vector<FixtureEntry> entries;
};
CrowdMembers generate_crowd(const CrowdSpec& crowd, std::uint64_t seed);

}  // namespace usn::harness

#include "usn/harness/scenario.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "usn/core/error.hpp"

namespace usn::harness {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ScriptParseError, what); }

constexpr std::array<std::pair<Action, std::string_view>, 13> kActions = {{
    {Action::Attach, "attach"},
    {Action::Deregister, "deregister"},
    {Action::Move, "move"},
    {Action::Point, "point"},
    {Action::Request, "request"},
    {Action::Scan, "scan"},
    {Action::SetPolicy, "set_policy"},
    {Action::OptOut, "opt_out"},
    {Action::Beacon, "beacon"},
    {Action::AdvanceClock, "advance_clock"},
    {Action::SnOutage, "sn_outage"},
    {Action::Parallel, "parallel"},
    {Action::Assert, "assert"},
}};

Action action_from(const std::string& name) {
  for (const auto& [a, n] : kActions) {
    if (n == name) return a;
  }
  bad("unknown action '" + name + "'");
}

double heading_of(const json& j) {
  if (j.contains("heading_deg")) return j.at("heading_deg").get<double>() * std::numbers::pi / 180.0;
  return j.value("heading", 0.0);
}

Vec2 position_of(const json& j) {
  const auto& p = j.at("position");
  if (!p.is_array() || p.size() != 2) bad("position must be [x, y]");
  return {p[0].get<double>(), p[1].get<double>()};
}

std::string crowd_name(const CrowdSpec& crowd, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu", i);
  return crowd.prefix + buf;
}

AreaSpec parse_area(const json& j) {
  AreaSpec spec;
  try {
    spec.area = service_area_from_json(j);
    spec.params.discovery_range_m = j.value("discovery_range_m", spec.params.discovery_range_m);
    spec.params.cone_half_angle_rad = j.value("cone_half_angle_rad", spec.params.cone_half_angle_rad);
    spec.params.validate();
  } catch (const Error& e) {
    bad(std::string("area: ") + e.what());
  }
  spec.cache_ttl_seconds = j.value("cache_ttl_seconds", spec.cache_ttl_seconds);
  if (spec.cache_ttl_seconds < 0) bad("cache_ttl_seconds must be >= 0");
  return spec;
}

class StepParser {
 public:
  StepParser(const std::set<std::string>& actors) : actors_(actors) {}

  Step parse(const json& j, bool nested) {
    if (!j.is_object()) bad("each step must be an object");
    Step step;
    step.action = action_from(j.at("action").get<std::string>());
    step.id = j.value("id", std::string{});
    step.args = j;
    if (!step.id.empty() && !ids_.insert(step.id).second) bad("duplicate step id '" + step.id + "'");

    if (j.contains("actor")) step.actors.push_back(j.at("actor").get<std::string>());
    if (j.contains("actors")) {
      for (const auto& a : j.at("actors")) step.actors.push_back(a.get<std::string>());
    }
    for (const auto& a : step.actors) require_actor(a);
    if (j.contains("target")) require_actor(j.at("target").get<std::string>());
    if (j.contains("moves")) {
      for (const auto& m : j.at("moves")) {
        require_actor(m.at("actor").get<std::string>());
        position_of(m);
      }
    }

    switch (step.action) {
      case Action::Attach:
        if (step.actors.empty() && !j.value("all", false)) bad("attach needs actor(s) or \"all\": true");
        break;
      case Action::Deregister:
      case Action::Point:
      case Action::Scan:
      case Action::SetPolicy:
      case Action::OptOut:
      case Action::Beacon:
        if (step.actors.size() != 1) bad(std::string(to_string(step.action)) + " needs exactly one actor");
        if (step.action == Action::SetPolicy) field_set_from_json(j.at("allowed_fields"));
        break;
      case Action::Move:
        if (!j.contains("moves")) {
          if (step.actors.size() != 1) bad("move needs an actor or a moves list");
          position_of(j);
        }
        break;
      case Action::Request:
        if (step.actors.size() != 1) bad("request needs exactly one actor");
        if (!j.contains("target") && !j.contains("target_usnd")) bad("request needs target or target_usnd");
        if (j.contains("target_usnd")) UsndId::parse(j.at("target_usnd").get<std::string>());
        break;
      case Action::AdvanceClock:
        if (!j.at("seconds").is_number() || j.at("seconds").get<double>() < 0) bad("seconds must be >= 0");
        break;
      case Action::SnOutage:
        j.at("down").get<bool>();
        break;
      case Action::Parallel: {
        if (nested) bad("parallel groups do not nest");
        std::set<std::string> seen;
        for (const auto& sub : j.at("steps")) {
          auto s = parse(sub, true);
          if (s.action == Action::Assert || s.action == Action::AdvanceClock) {
            bad("parallel groups hold device actions only");
          }
          for (const auto& a : s.actors) {
            if (!seen.insert(a).second) bad("actor '" + a + "' appears twice in one parallel group");
          }
          step.group.push_back(std::move(s));
        }
        break;
      }
      case Action::Assert: {
        auto ref = j.at("ref").get<std::string>();
        if (!ids_.contains(ref) || ref == step.id) bad("assert references unknown or later step '" + ref + "'");
        if (!j.at("expect").is_object()) bad("assert needs an expect object");
        static const std::set<std::string> kKeys = {"ok",         "error",      "fields",   "labels",  "line_count",
                                                    "neighbors",  "contains",   "excludes", "count",   "target_user"};
        for (const auto& [key, _] : j.at("expect").items()) {
          if (!kKeys.contains(key)) bad("unknown expectation '" + key + "'");
        }
        break;
      }
    }
    return step;
  }

 private:
  void require_actor(const std::string& name) const {
    if (!actors_.contains(name)) bad("step references undefined actor '" + name + "'");
  }

  const std::set<std::string>& actors_;
  std::set<std::string> ids_;
};

}  // namespace

std::string_view to_string(Action action) noexcept {
  for (const auto& [a, n] : kActions) {
    if (a == action) return n;
  }
  return "unknown";
}

const AreaSpec* ScenarioScript::find_area(const std::string& area_id) const {
  for (const auto& a : areas) {
    if (a.area.area_id == area_id) return &a;
  }
  return nullptr;
}

const ActorSpec* ScenarioScript::find_actor(const std::string& actor) const {
  for (const auto& a : actors) {
    if (a.name == actor) return &a;
  }
  return nullptr;
}

CrowdMembers generate_crowd(const CrowdSpec& crowd, std::uint64_t seed) {
  static constexpr std::array<std::string_view, 6> kDomains = {
      "compilers", "databases", "networking", "graphics", "security", "robotics"};
  CrowdMembers out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(crowd.region.min_x, crowd.region.max_x);
  std::uniform_real_distribution<double> uy(crowd.region.min_y, crowd.region.max_y);
  std::uniform_real_distribution<double> uh(0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < crowd.count; ++i) {
    auto name = crowd_name(crowd, i);
    auto usnd = UsndId::from_number(0xC0000000u + static_cast<std::uint32_t>(i));
    const double x = ux(rng);
    const double y = uy(rng);
    const double h = uh(rng);
    out.actors.push_back({name, usnd, crowd.area_id, {x, y}, h});
    FieldMap fields{{ProfileField::Name, "Guest " + std::to_string(i)},
                    {ProfileField::WorkDomain, std::string(kDomains[rng() % kDomains.size()])}};
    out.entries.push_back({UserProfile(SocialUserId::parse(name), usnd, std::move(fields)), crowd.policy});
  }
  return out;
}

ScenarioScript parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  ScenarioScript script;
  try {
    if (!j.is_object() || j.value("schema", 0) != 1) bad("scenario needs {\"schema\": 1}");
    script.name = j.at("name").get<std::string>();
    script.seed = j.value("seed", std::uint64_t{0});

    for (const auto& a : j.at("areas")) script.areas.push_back(parse_area(a));
    if (script.areas.empty()) bad("at least one area is required");
    std::set<std::string> area_ids;
    for (const auto& a : script.areas) {
      if (!area_ids.insert(a.area.area_id).second) bad("duplicate area " + a.area.area_id);
    }
    const std::string default_area = script.areas.front().area.area_id;

    const auto& fixtures = j.at("fixtures");
    script.fixtures = fixtures.is_string() ? load_fixtures(base_dir / fixtures.get<std::string>())
                                           : parse_fixtures(fixtures);

    std::set<std::string> names;
    std::set<std::string> devices;
    for (const auto& a : j.value("actors", json::array())) {
      ActorSpec actor{a.at("name").get<std::string>(), UsndId::parse(a.at("usnd_id").get<std::string>()),
                      a.value("area", default_area), position_of(a), heading_of(a)};
      const auto* area = script.find_area(actor.area_id);
      if (area == nullptr) bad("actor " + actor.name + " is in unknown area " + actor.area_id);
      if (!area->area.bounds.contains(actor.position)) bad("actor " + actor.name + " is placed out of bounds");
      if (!names.insert(actor.name).second) bad("duplicate actor " + actor.name);
      if (!devices.insert(actor.usnd_id.str()).second) bad("duplicate device " + actor.usnd_id.str());
      script.actors.push_back(std::move(actor));
    }

    if (j.contains("crowd")) {
      const auto& c = j.at("crowd");
      CrowdSpec crowd;
      crowd.area_id = c.value("area", default_area);
      if (!area_ids.contains(crowd.area_id)) bad("crowd is in unknown area " + crowd.area_id);
      crowd.count = c.at("count").get<std::size_t>();
      crowd.region = bounds_from_json(c.at("region"));
      const auto& ab = script.find_area(crowd.area_id)->area.bounds;
      if (!ab.contains({crowd.region.min_x, crowd.region.min_y}) || !ab.contains({crowd.region.max_x, crowd.region.max_y})) {
        bad("crowd region must lie inside its area");
      }
      crowd.prefix = c.value("prefix", crowd.prefix);
      if (c.contains("policy")) crowd.policy = field_set_from_json(c.at("policy"));
      for (std::size_t i = 0; i < crowd.count; ++i) {
        if (!names.insert(crowd_name(crowd, i)).second) bad("crowd name collides with an actor");
      }
      script.crowd = crowd;
    }

    StepParser parser(names);
    for (const auto& s : j.at("steps")) script.steps.push_back(parser.parse(s, false));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ScriptParseError || e.code() == ErrorCode::FixtureParseError) throw;
    bad(e.what());
  } catch (const json::exception& e) {
    bad(e.what());
  }
  return script;
}

ScenarioScript load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ScriptParseError, "cannot open " + path.string());
  auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ScriptParseError, path.string() + " is not valid JSON");
  return parse_scenario(j, path.parent_path());
}

}  // namespace usn::harness

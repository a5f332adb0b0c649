#include "usn/harness/engine.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <memory>
#include <set>

#include <spdlog/spdlog.h>

#include "usn/core/error.hpp"
#include "usn/device/device.hpp"
#include "usn/net/json_client.hpp"
#include "usn/sn/http_server.hpp"
#include "usn/sn/social_network.hpp"
#include "usn/ubiserv/http_server.hpp"
#include "usn/ubiserv/ubiserv.hpp"
#include "usn/world/http_server.hpp"
#include "usn/world/world.hpp"

namespace usn::harness {
namespace {

using nlohmann::json;

/// Wraps the UbiServ-to-SN link so a scenario can take the SN offline.
class OutageSwitch final : public ubiserv::SocialNetworkApi {
 public:
  explicit OutageSwitch(std::unique_ptr<ubiserv::SocialNetworkApi> inner) : inner_(std::move(inner)) {}

  void set_down(bool down) noexcept { down_.store(down); }

  void register_ubiserv(const std::string& id, const std::string& secret) override {
    check();
    inner_->register_ubiserv(id, secret);
  }
  ubiserv::SnGrant authenticate(const std::string& id, const std::string& secret) override {
    check();
    return inner_->authenticate(id, secret);
  }
  SocialUserId lookup_user_by_usnd(const std::string& token, const UsndId& usnd_id) override {
    check();
    return inner_->lookup_user_by_usnd(token, usnd_id);
  }
  ServedProfile serve_ubiserv_request(const std::string& token, const SocialUserId& target) override {
    check();
    return inner_->serve_ubiserv_request(token, target);
  }

 private:
  void check() const {
    if (down_.load()) throw Error(ErrorCode::UpstreamUnavailable, "social network offline");
  }

  std::unique_ptr<ubiserv::SocialNetworkApi> inner_;
  std::atomic<bool> down_{false};
};

struct AreaRuntime {
  AreaSpec spec;
  std::shared_ptr<OutageSwitch> sn_link;
  std::unique_ptr<ubiserv::UbiServ> ubiserv;
  std::unique_ptr<world::World> world;
  std::unique_ptr<ubiserv::UbiServHttpServer> ubiserv_http;
  std::unique_ptr<world::WorldHttpServer> world_http;
  std::unique_ptr<net::JsonClient> world_client;
  std::shared_ptr<device::UbiServEndpoint> ubiserv_endpoint;
  std::shared_ptr<device::WorldEndpoint> world_endpoint;
};

json ok_outcome() { return {{"ok", true}}; }

json error_outcome(ErrorCode code) { return {{"ok", false}, {"error", std::string(to_string(code))}}; }

json field_names_of(const device::DisplayRecord& record) {
  auto names = json::array();
  for (const auto& [label, _] : record.lines) {
    for (auto f : kAllProfileFields) {
      if (device::label_for(f) == label) names.push_back(std::string(to_string(f)));
    }
  }
  return names;
}

json display_outcome(const device::DisplayRecord& record) {
  return {{"ok", true}, {"display", device::to_json(record)}, {"fields", field_names_of(record)}};
}

std::pair<bool, std::string> evaluate(const json& expect, const json& outcome) {
  std::string detail;
  auto fail = [&](const std::string& key) {
    if (!detail.empty()) detail += "; ";
    detail += key + " mismatch";
  };
  const bool ok = outcome.value("ok", false);
  const auto neighbors = outcome.value("neighbors", json::array());
  auto has = [&](const json& name) { return std::find(neighbors.begin(), neighbors.end(), name) != neighbors.end(); };

  for (const auto& [key, want] : expect.items()) {
    if (key == "ok") {
      if (ok != want.get<bool>()) fail(key);
    } else if (key == "error") {
      if (ok || outcome.value("error", std::string{}) != want.get<std::string>()) fail(key);
    } else if (key == "fields") {
      auto got = outcome.value("fields", json::array()).get<std::vector<std::string>>();
      auto exp = want.get<std::vector<std::string>>();
      std::sort(got.begin(), got.end());
      std::sort(exp.begin(), exp.end());
      if (!ok || got != exp) fail(key);
    } else if (key == "labels" || key == "line_count") {
      std::vector<std::string> labels;
      if (ok && outcome.contains("display")) {
        for (const auto& line : outcome["display"]["lines"]) labels.push_back(line[0].get<std::string>());
      }
      if (!ok) fail(key);
      else if (key == "labels" && labels != want.get<std::vector<std::string>>()) fail(key);
      else if (key == "line_count" && labels.size() != want.get<std::size_t>()) fail(key);
    } else if (key == "target_user") {
      if (!ok || !outcome.contains("display") || outcome["display"]["target_user_id"] != want) fail(key);
    } else if (key == "neighbors") {
      if (!ok || neighbors != want) fail(key);
    } else if (key == "contains") {
      if (!ok || !std::all_of(want.begin(), want.end(), has)) fail(key);
    } else if (key == "excludes") {
      if (!ok || std::any_of(want.begin(), want.end(), has)) fail(key);
    } else if (key == "count") {
      if (!ok || neighbors.size() != want.get<std::size_t>()) fail(key);
    }
  }
  return {detail.empty(), detail};
}

class ScenarioRun {
 public:
  ScenarioRun(const ScenarioScript& script, const RunOptions& options)
      : script_(script), seed_(options.seed.value_or(script.seed)), transport_(options.transport) {}

  Transcript execute() {
    boot();
    Transcript t;
    t.scenario = script_.name;
    t.seed = seed_;
    t.mode = transport_ == Transport::InProcess ? "in-process" : "loopback";
    for (const auto& step : script_.steps) run_step(step, t);
    return t;
  }

 private:
  void boot() {
    clock_ = std::make_shared<ManualClock>();
    sn_ = std::make_unique<sn::SocialNetwork>(clock_, sn::SocialNetworkOptions{3600, std::nullopt, seed_});

    auto fixtures = script_.fixtures;
    actors_ = script_.actors;
    if (script_.crowd) {
      auto crowd = generate_crowd(*script_.crowd, seed_);
      fixtures.entries.insert(fixtures.entries.end(), crowd.entries.begin(), crowd.entries.end());
      actors_.insert(actors_.end(), crowd.actors.begin(), crowd.actors.end());
    }
    apply_fixtures(*sn_, fixtures);
    for (const auto& e : fixtures.entries) user_of_.emplace(e.profile.usnd_id(), e.profile.user_id());
    for (const auto& a : actors_) name_of_.emplace(a.usnd_id, a.name);

    try {
      std::string sn_url;
      if (transport_ == Transport::Loopback) {
        sn_http_ = std::make_unique<sn::SnHttpServer>(*sn_);
        sn_http_->bind("127.0.0.1", 0);
        sn_http_->start();
        sn_url = sn_http_->base_url();
      }

      std::uint64_t index = 0;
      for (const auto& spec : script_.areas) {
        auto& rt = areas_[spec.area.area_id];
        rt.spec = spec;
        std::unique_ptr<ubiserv::SocialNetworkApi> link;
        if (transport_ == Transport::Loopback) {
          link = std::make_unique<ubiserv::HttpSocialNetworkApi>(sn_url);
        } else {
          link = std::make_unique<ubiserv::InProcessSocialNetworkApi>(*sn_);
        }
        rt.sn_link = std::make_shared<OutageSwitch>(std::move(link));

        ubiserv::UbiServConfig cfg;
        cfg.area = spec.area;
        cfg.sn_base_url = sn_url;
        cfg.ubiserv_id = "ubiserv-" + spec.area.area_id;
        cfg.secret = "scenario-secret-" + spec.area.area_id;
        cfg.cache_ttl_seconds = spec.cache_ttl_seconds;
        rt.ubiserv = std::make_unique<ubiserv::UbiServ>(cfg, rt.sn_link, clock_, seed_ + ++index);
        rt.world = std::make_unique<world::World>(spec.area, spec.params);

        if (transport_ == Transport::Loopback) {
          rt.ubiserv_http = std::make_unique<ubiserv::UbiServHttpServer>(*rt.ubiserv);
          rt.ubiserv_http->bind("127.0.0.1", 0);
          rt.ubiserv_http->start();
          rt.world_http = std::make_unique<world::WorldHttpServer>(*rt.world);
          rt.world_http->bind("127.0.0.1", 0);
          rt.world_http->start();
          rt.world_client = std::make_unique<net::JsonClient>(rt.world_http->base_url(), ErrorCode::WorldUnreachable);
          rt.ubiserv_endpoint = std::make_shared<device::HttpUbiServEndpoint>(rt.ubiserv_http->base_url());
          rt.world_endpoint = std::make_shared<device::HttpWorldEndpoint>(rt.world_http->base_url());
        } else {
          rt.ubiserv_endpoint = std::make_shared<device::LocalUbiServEndpoint>(*rt.ubiserv);
          rt.world_endpoint = std::make_shared<device::LocalWorldEndpoint>(*rt.world);
        }
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::ServiceBootFailure, e.what());
    }

    for (const auto& a : actors_) {
      auto& rt = areas_.at(a.area_id);
      rt.world->place_device(a.usnd_id, a.position, a.heading);
      devices_.emplace(a.name, std::make_unique<device::Device>(a.usnd_id));
    }
  }

  const ActorSpec& actor(const std::string& name) const {
    for (const auto& a : actors_) {
      if (a.name == name) return a;
    }
    throw Error(ErrorCode::ScriptParseError, "unknown actor " + name);
  }

  AreaRuntime& area_of(const std::string& actor_name) { return areas_.at(actor(actor_name).area_id); }

  std::uint64_t tick_for(const Step& step) {
    if (!step.actors.empty()) return area_of(step.actors.front()).world->tick();
    return areas_.at(script_.areas.front().area.area_id).world->tick();
  }

  void run_step(const Step& step, Transcript& t) {
    if (step.action == Action::Assert) {
      const auto ref = step.args.at("ref").get<std::string>();
      auto it = outcomes_.find(ref);
      auto [pass, detail] = it == outcomes_.end() ? std::pair{false, std::string("no outcome recorded")}
                                                  : evaluate(step.args.at("expect"), it->second);
      t.assertions.push_back({step.id, ref, pass, detail});
      t.entries.push_back({tick_for(step), step.id, "", "assert",
                           {{"ref", ref}, {"pass", pass}, {"detail", detail}}});
      return;
    }
    if (step.action == Action::Parallel) {
      std::vector<std::future<json>> futures;
      for (const auto& sub : step.group) {
        futures.push_back(std::async(std::launch::async, [this, &sub] { return guarded(sub); }));
      }
      std::vector<json> results;
      for (auto& f : futures) results.push_back(f.get());
      for (std::size_t i = 0; i < step.group.size(); ++i) record(step.group[i], std::move(results[i]), t);
      t.entries.push_back({tick_for(step), step.id, "", "parallel", {{"ok", true}, {"size", step.group.size()}}});
      return;
    }
    record(step, guarded(step), t);
  }

  void record(const Step& step, json outcome, Transcript& t) {
    std::string who;
    for (const auto& a : step.actors) who += (who.empty() ? "" : ",") + a;
    if (step.action == Action::Attach && step.args.value("all", false)) who = "*";
    if (!step.id.empty()) outcomes_[step.id] = outcome;
    t.entries.push_back({tick_for(step), step.id, who, std::string(to_string(step.action)), std::move(outcome)});
  }

  json guarded(const Step& step) {
    try {
      return perform(step);
    } catch (const Error& e) {
      spdlog::debug("scenario {}: step '{}' -> {}", script_.name, step.id, to_string(e.code()));
      return error_outcome(e.code());
    }
  }

  json names_of(const std::vector<UsndId>& ids) const {
    auto names = json::array();
    for (const auto& id : ids) {
      auto it = name_of_.find(id);
      names.push_back(it == name_of_.end() ? id.str() : it->second);
    }
    return names;
  }

  const SocialUserId& user_for(const std::string& actor_name) const {
    auto it = user_of_.find(actor(actor_name).usnd_id);
    if (it == user_of_.end()) throw Error(ErrorCode::UnknownUser, actor_name);
    return it->second;
  }

  json perform(const Step& step) {
    const auto& args = step.args;
    switch (step.action) {
      case Action::Attach: {
        std::vector<std::string> who = step.actors;
        if (args.value("all", false)) {
          who.clear();
          for (const auto& a : actors_) who.push_back(a.name);
        }
        for (const auto& name : who) {
          auto& rt = area_of(name);
          devices_.at(name)->attach(rt.ubiserv_endpoint, rt.world_endpoint);
        }
        return {{"ok", true}, {"attached", who.size()}};
      }
      case Action::Deregister:
        devices_.at(step.actors.front())->detach();
        return ok_outcome();
      case Action::Move:
        return move(step);
      case Action::Point:
        return display_outcome(devices_.at(step.actors.front())->point_and_request());
      case Action::Request:
        return request(step);
      case Action::Scan: {
        auto ids = devices_.at(step.actors.front())->scan();
        auto usnd = json::array();
        for (const auto& id : ids) usnd.push_back(id.str());
        return {{"ok", true}, {"neighbors", names_of(ids)}, {"usnd_ids", usnd}};
      }
      case Action::SetPolicy: {
        const auto& user = user_for(step.actors.front());
        auto fields = field_set_from_json(args.at("allowed_fields"));
        if (transport_ == Transport::Loopback) {
          net::JsonClient(sn_http_->base_url(), ErrorCode::UpstreamUnavailable)
              .put("/users/" + user.str() + "/policy",
                   {{"context", "ubiserv_event"}, {"allowed_fields", field_set_to_json(fields)}});
        } else {
          sn_->set_view_policy(user, ViewPolicy{user, ViewContext::UbiServEvent, fields});
        }
        return ok_outcome();
      }
      case Action::OptOut:
        devices_.at(step.actors.front())->set_service_enabled(!args.value("value", true));
        return ok_outcome();
      case Action::Beacon: {
        const auto& name = step.actors.front();
        const bool enabled = args.value("enabled", true);
        auto& rt = area_of(name);
        if (rt.world_client) {
          rt.world_client->post("/world/beacon", {{"usnd_id", actor(name).usnd_id.str()}, {"enabled", enabled}});
        } else {
          rt.world->set_beacon(actor(name).usnd_id, enabled);
        }
        return ok_outcome();
      }
      case Action::AdvanceClock: {
        const auto ns = static_cast<Duration::rep>(args.at("seconds").get<double>() * 1e9);
        clock_->advance(Duration(ns));
        elapsed_ += Duration(ns);
        return {{"ok", true}, {"elapsed_ms", std::chrono::duration_cast<std::chrono::milliseconds>(elapsed_).count()}};
      }
      case Action::SnOutage: {
        const bool down = args.at("down").get<bool>();
        for (auto& [id, rt] : areas_) {
          if (!args.contains("area") || args["area"] == id) rt.sn_link->set_down(down);
        }
        return ok_outcome();
      }
      case Action::Parallel:
      case Action::Assert:
        break;
    }
    throw Error(ErrorCode::ScriptParseError, "unexpected step");
  }

  json move(const Step& step) {
    std::vector<std::pair<std::string, world::Move>> moves;
    auto add = [&](const json& m, const std::string& name) {
      const auto& p = m.at("position");
      double heading = m.contains("heading_deg") ? m["heading_deg"].get<double>() * std::numbers::pi / 180.0
                                                 : m.value("heading", actor_heading(name));
      moves.push_back({name, {actor(name).usnd_id, {p[0].get<double>(), p[1].get<double>()}, heading}});
    };
    if (step.args.contains("moves")) {
      for (const auto& m : step.args["moves"]) add(m, m.at("actor").get<std::string>());
    } else {
      add(step.args, step.actors.front());
    }
    const auto area_id = actor(moves.front().first).area_id;
    std::vector<world::Move> batch;
    for (const auto& [name, m] : moves) {
      if (actor(name).area_id != area_id) throw Error(ErrorCode::OutOfBounds, name + " is in another area");
      batch.push_back(m);
    }
    auto& rt = areas_.at(area_id);
    std::uint64_t tick = 0;
    if (rt.world_client) {
      auto list = json::array();
      for (const auto& m : batch) {
        list.push_back({{"usnd_id", m.usnd_id.str()}, {"x", m.position.x}, {"y", m.position.y}, {"heading", m.heading}});
      }
      tick = rt.world_client->post("/world/step", {{"moves", list}}).at("tick").get<std::uint64_t>();
    } else {
      tick = rt.world->step(batch);
    }
    return {{"ok", true}, {"tick", tick}};
  }

  double actor_heading(const std::string& name) {
    auto pose = area_of(name).world->pose(actor(name).usnd_id);
    return pose ? pose->heading : 0.0;
  }

  json request(const Step& step) {
    const auto& args = step.args;
    auto& dev = *devices_.at(step.actors.front());
    const UsndId target = args.contains("target") ? actor(args["target"].get<std::string>()).usnd_id
                                                  : UsndId::parse(args["target_usnd"].get<std::string>());
    if (!args.contains("via_area")) return display_outcome(dev.request(target));

    // Replays this device's session token at another area's UbiServ.
    if (!dev.state().session) throw Error(ErrorCode::NotAttached, dev.usnd_id().str());
    auto it = areas_.find(args["via_area"].get<std::string>());
    if (it == areas_.end()) throw Error(ErrorCode::ScriptParseError, "unknown via_area");
    auto served = it->second.ubiserv_endpoint->request_profile(dev.state().session->session_token, target);
    return display_outcome(device::render(served));
  }

  const ScenarioScript& script_;
  std::uint64_t seed_;
  Transport transport_;

  std::shared_ptr<ManualClock> clock_;
  Duration elapsed_{};
  std::unique_ptr<sn::SocialNetwork> sn_;
  std::unique_ptr<sn::SnHttpServer> sn_http_;
  std::map<std::string, AreaRuntime> areas_;
  std::vector<ActorSpec> actors_;
  std::map<UsndId, SocialUserId> user_of_;
  std::map<UsndId, std::string> name_of_;
  std::map<std::string, std::unique_ptr<device::Device>> devices_;
  std::map<std::string, json> outcomes_;
};

}  // namespace

Transcript run_scenario(const ScenarioScript& script, const RunOptions& options) {
  ScenarioRun run(script, options);
  return run.execute();
}

Transcript run_scenario_file(const std::filesystem::path& path, const RunOptions& options) {
  return run_scenario(load_scenario(path), options);
}

}  // namespace usn::harness

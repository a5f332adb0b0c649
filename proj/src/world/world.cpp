#include "usn/world/world.hpp"

#include <cmath>
#include <mutex>

#include "usn/core/error.hpp"
#include "usn/world/kernels.hpp"

namespace usn::world {

void WorldParams::validate() const {
  if (!(discovery_range_m > 0.0) || !std::isfinite(discovery_range_m)) {
    throw Error(ErrorCode::ConfigError, "discovery_range_m must be > 0");
  }
  if (!(cone_half_angle_rad > 0.0) || !(cone_half_angle_rad < std::numbers::pi / 2.0)) {
    throw Error(ErrorCode::ConfigError, "cone_half_angle_rad must lie in (0, pi/2)");
  }
}

nlohmann::json to_json(const DevicePose& pose) {
  return {{"usnd_id", pose.usnd_id.str()},
          {"x", pose.position.x},
          {"y", pose.position.y},
          {"heading", pose.heading},
          {"beacon_enabled", pose.beacon_enabled}};
}

World::World(ServiceArea area, WorldParams params)
    : area_(std::move(area)),
      params_(params),
      cos_half_angle_(std::cos(params.cone_half_angle_rad)),
      grid_(params.discovery_range_m) {
  area_.validate();
  params_.validate();
}

void World::reindex_locked() {
  flat_.clear();
  flat_index_.clear();
  flat_.reserve(devices_.size());
  for (const auto& [id, pose] : devices_) {
    flat_index_.emplace(id, flat_.size());
    flat_.push_back(pose);
  }
  grid_.rebuild(flat_);
}

std::size_t World::index_locked(const UsndId& usnd_id) const {
  auto it = flat_index_.find(usnd_id);
  if (it == flat_index_.end()) throw Error(ErrorCode::UnknownDevice, usnd_id.str());
  return it->second;
}

void World::place_device(const UsndId& usnd_id, Vec2 position, double heading) {
  if (!area_.bounds.contains(position) || !std::isfinite(heading)) {
    throw Error(ErrorCode::OutOfBounds, usnd_id.str());
  }
  std::unique_lock lock(mutex_);
  devices_.insert_or_assign(usnd_id, DevicePose{usnd_id, position, normalize_heading(heading), true});
  reindex_locked();
}

void World::set_beacon(const UsndId& usnd_id, bool enabled) {
  std::unique_lock lock(mutex_);
  auto it = devices_.find(usnd_id);
  if (it == devices_.end()) throw Error(ErrorCode::UnknownDevice, usnd_id.str());
  it->second.beacon_enabled = enabled;
  reindex_locked();
}

std::uint64_t World::step(std::span<const Move> moves) {
  std::unique_lock lock(mutex_);
  for (const auto& m : moves) {
    if (!devices_.contains(m.usnd_id)) throw Error(ErrorCode::UnknownDevice, m.usnd_id.str());
    if (!area_.bounds.contains(m.position) || !std::isfinite(m.heading)) {
      throw Error(ErrorCode::OutOfBounds, m.usnd_id.str());
    }
  }
  for (const auto& m : moves) {
    auto& pose = devices_.at(m.usnd_id);
    pose.position = m.position;
    pose.heading = normalize_heading(m.heading);
  }
  reindex_locked();
  return ++tick_;
}

std::vector<UsndId> World::neighbors(const UsndId& usnd_id) const {
  std::shared_lock lock(mutex_);
  std::vector<UsndId> out;
  for (auto i : neighbors_of(flat_, grid_, index_locked(usnd_id), params_.discovery_range_m)) {
    out.push_back(flat_[i].usnd_id);
  }
  return out;
}

UsndId World::resolve_pointing(const UsndId& usnd_id) const {
  std::shared_lock lock(mutex_);
  auto hit = pointing_of(flat_, grid_, index_locked(usnd_id), params_.discovery_range_m, cos_half_angle_);
  if (!hit) throw Error(ErrorCode::NoTarget, usnd_id.str());
  return flat_[*hit].usnd_id;
}

std::map<UsndId, std::vector<UsndId>> World::neighbor_table() const {
  std::shared_lock lock(mutex_);
  auto table = neighbor_table_parallel(flat_, params_);
  std::map<UsndId, std::vector<UsndId>> out;
  for (std::size_t i = 0; i < flat_.size(); ++i) {
    auto& list = out[flat_[i].usnd_id];
    for (auto j : table[i]) list.push_back(flat_[j].usnd_id);
  }
  return out;
}

bool World::contains(const UsndId& usnd_id) const {
  std::shared_lock lock(mutex_);
  return devices_.contains(usnd_id);
}

std::optional<DevicePose> World::pose(const UsndId& usnd_id) const {
  std::shared_lock lock(mutex_);
  auto it = devices_.find(usnd_id);
  if (it == devices_.end()) return std::nullopt;
  return it->second;
}

std::vector<DevicePose> World::poses() const {
  std::shared_lock lock(mutex_);
  return flat_;
}

std::size_t World::device_count() const {
  std::shared_lock lock(mutex_);
  return devices_.size();
}

std::uint64_t World::tick() const {
  std::shared_lock lock(mutex_);
  return tick_;
}

nlohmann::json World::snapshot_locked() const {
  auto poses = nlohmann::json::array();
  for (const auto& [_, pose] : devices_) poses.push_back(to_json(pose));
  return {{"area", usn::to_json(area_)},
          {"tick", tick_},
          {"discovery_range_m", params_.discovery_range_m},
          {"cone_half_angle_rad", params_.cone_half_angle_rad},
          {"poses", poses}};
}

nlohmann::json World::snapshot() const {
  std::shared_lock lock(mutex_);
  return snapshot_locked();
}

std::uint64_t World::state_hash() const {
  const auto bytes = snapshot().dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::unique_ptr<World> World::from_snapshot(const nlohmann::json& j) {
  try {
    auto world = std::make_unique<World>(
        service_area_from_json(j.at("area")),
        WorldParams{j.at("discovery_range_m").get<double>(), j.at("cone_half_angle_rad").get<double>()});
    auto& w = *world;
    for (const auto& p : j.at("poses")) {
      auto id = UsndId::parse(p.at("usnd_id").get<std::string>());
      Vec2 pos{p.at("x").get<double>(), p.at("y").get<double>()};
      if (!w.area_.bounds.contains(pos)) throw Error(ErrorCode::OutOfBounds, id.str());
      w.devices_.insert_or_assign(id, DevicePose{id, pos, normalize_heading(p.at("heading").get<double>()),
                                                 p.value("beacon_enabled", true)});
    }
    w.tick_ = j.at("tick").get<std::uint64_t>();
    w.reindex_locked();
    return world;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRequest, std::string("world snapshot: ") + e.what());
  }
}

}  // namespace usn::world

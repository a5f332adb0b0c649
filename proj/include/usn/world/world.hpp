#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "usn/core/area.hpp"
#include "usn/world/geometry.hpp"
#include "usn/world/grid_index.hpp"

namespace usn::world {

struct Move {
  UsndId usnd_id;
  Vec2 position;
  double heading = 0.0;
};

/// Deterministic 2D event floor. Beacons give omnidirectional discovery
/// within the discovery range; pointing picks the nearest beacon inside a
/// cone around the device heading.
///
/// One writer at a time; queries run concurrently between writes.
class World {
 public:
  explicit World(ServiceArea area, WorldParams params = {});

  /// Insert or replace. Throws OutOfBounds.
  void place_device(const UsndId& usnd_id, Vec2 position, double heading);
  /// Throws UnknownDevice.
  void set_beacon(const UsndId& usnd_id, bool enabled);
  /// Applies all moves or none. Throws UnknownDevice / OutOfBounds.
  std::uint64_t step(std::span<const Move> moves);

  /// Throws UnknownDevice.
  std::vector<UsndId> neighbors(const UsndId& usnd_id) const;
  /// Throws UnknownDevice, NoTarget.
  UsndId resolve_pointing(const UsndId& usnd_id) const;
  /// Every device's neighbor list, computed with the parallel kernel.
  std::map<UsndId, std::vector<UsndId>> neighbor_table() const;

  bool contains(const UsndId& usnd_id) const;
  std::optional<DevicePose> pose(const UsndId& usnd_id) const;
  std::vector<DevicePose> poses() const;
  std::size_t device_count() const;
  std::uint64_t tick() const;
  const ServiceArea& area() const noexcept { return area_; }
  const WorldParams& params() const noexcept { return params_; }

  /// {area, tick, discovery_range_m, cone_half_angle_rad, poses:[...]} with
  /// poses sorted by usnd_id.
  nlohmann::json snapshot() const;
  /// FNV-1a over the snapshot's serialized bytes.
  std::uint64_t state_hash() const;
  /// Throws Error{MalformedRequest} / ConfigError / OutOfBounds.
  static std::unique_ptr<World> from_snapshot(const nlohmann::json& j);

 private:
  std::size_t index_locked(const UsndId& usnd_id) const;
  void reindex_locked();
  nlohmann::json snapshot_locked() const;

  ServiceArea area_;
  WorldParams params_;
  double cos_half_angle_;

  mutable std::shared_mutex mutex_;
  std::map<UsndId, DevicePose> devices_;
  std::uint64_t tick_ = 0;

  // Derived from devices_ on every write.
  std::vector<DevicePose> flat_;
  std::map<UsndId, std::size_t> flat_index_;
  GridIndex grid_;
};

nlohmann::json to_json(const DevicePose& pose);

}  // namespace usn::world

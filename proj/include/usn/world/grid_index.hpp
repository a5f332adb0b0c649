#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "usn/world/geometry.hpp"

namespace usn::world {

/// Uniform bucket grid over beacon-enabled poses. With cell size equal to the
/// query radius, the 3x3 block around a point holds every candidate.
class GridIndex {
 public:
  GridIndex() = default;
  // Padded so floor() rounding never puts an in-range point two cells away.
  explicit GridIndex(double cell_size) : cell_size_(cell_size * (1.0 + 1e-9)) {}

  void rebuild(std::span<const DevicePose> poses);

  template <class Visit>
  void for_each_candidate(Vec2 center, Visit&& visit) const {
    const auto cx = cell_of(center.x);
    const auto cy = cell_of(center.y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (auto index : it->second) visit(index);
      }
    }
  }

 private:
  std::int64_t cell_of(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_size_)); }
  static std::uint64_t key(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
  }

  double cell_size_ = 1.0;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace usn::world

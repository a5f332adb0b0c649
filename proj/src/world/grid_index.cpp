#include "usn/world/grid_index.hpp"

namespace usn::world {

void GridIndex::rebuild(std::span<const DevicePose> poses) {
  cells_.clear();
  for (std::size_t i = 0; i < poses.size(); ++i) {
    if (!poses[i].beacon_enabled) continue;
    cells_[key(cell_of(poses[i].position.x), cell_of(poses[i].position.y))].push_back(i);
  }
}

}  // namespace usn::world

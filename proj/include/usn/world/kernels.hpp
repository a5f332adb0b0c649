#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "usn/world/geometry.hpp"
#include "usn/world/grid_index.hpp"

namespace usn::world {

// Whole-floor batch queries. Entry i of a result belongs to poses[i]; indices
// inside refer back into `poses`. Neighbor lists are ordered nearest first,
// ties by ascending UsndId.

using NeighborTable = std::vector<std::vector<std::size_t>>;
using PointingTable = std::vector<std::optional<std::size_t>>;

/// Serial all-pairs reference.
NeighborTable neighbor_table_serial(std::span<const DevicePose> poses, const WorldParams& params);
/// Grid-accelerated, OpenMP-parallel over query devices.
NeighborTable neighbor_table_parallel(std::span<const DevicePose> poses, const WorldParams& params);

PointingTable pointing_table_serial(std::span<const DevicePose> poses, const WorldParams& params);
PointingTable pointing_table_parallel(std::span<const DevicePose> poses, const WorldParams& params);

/// Neighbors of poses[self] using a prebuilt grid over the same span.
std::vector<std::size_t> neighbors_of(std::span<const DevicePose> poses, const GridIndex& grid, std::size_t self,
                                      double range);
std::optional<std::size_t> pointing_of(std::span<const DevicePose> poses, const GridIndex& grid, std::size_t self,
                                       double range, double cos_half_angle);

}  // namespace usn::world

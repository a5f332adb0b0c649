#include "usn/world/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace usn::world {
namespace {

struct Candidate {
  double d2;
  std::size_t index;
};

void sort_candidates(std::vector<Candidate>& c, std::span<const DevicePose> poses) {
  std::sort(c.begin(), c.end(), [&](const Candidate& a, const Candidate& b) {
    return closer(a.d2, poses[a.index].usnd_id, b.d2, poses[b.index].usnd_id);
  });
}

std::vector<std::size_t> indices_of(const std::vector<Candidate>& c) {
  std::vector<std::size_t> out;
  out.reserve(c.size());
  for (const auto& x : c) out.push_back(x.index);
  return out;
}

bool is_neighbor(std::span<const DevicePose> poses, std::size_t self, std::size_t other, double range) {
  return other != self && poses[other].beacon_enabled &&
         within_range(poses[self].position, poses[other].position, range);
}

// Keeps the best (nearest, then lowest id) candidate seen so far.
void keep_best(std::optional<Candidate>& best, Candidate c, std::span<const DevicePose> poses) {
  if (!best || closer(c.d2, poses[c.index].usnd_id, best->d2, poses[best->index].usnd_id)) best = c;
}

}  // namespace

std::vector<std::size_t> neighbors_of(std::span<const DevicePose> poses, const GridIndex& grid, std::size_t self,
                                      double range) {
  std::vector<Candidate> found;
  grid.for_each_candidate(poses[self].position, [&](std::size_t other) {
    if (is_neighbor(poses, self, other, range)) {
      found.push_back({squared_distance(poses[self].position, poses[other].position), other});
    }
  });
  sort_candidates(found, poses);
  return indices_of(found);
}

std::optional<std::size_t> pointing_of(std::span<const DevicePose> poses, const GridIndex& grid, std::size_t self,
                                       double range, double cos_half_angle) {
  const auto& me = poses[self];
  std::optional<Candidate> best;
  grid.for_each_candidate(me.position, [&](std::size_t other) {
    if (!is_neighbor(poses, self, other, range)) return;
    if (!within_cone(me.position, me.heading, poses[other].position, cos_half_angle)) return;
    keep_best(best, {squared_distance(me.position, poses[other].position), other}, poses);
  });
  if (!best) return std::nullopt;
  return best->index;
}

NeighborTable neighbor_table_serial(std::span<const DevicePose> poses, const WorldParams& params) {
  NeighborTable table(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) {
    std::vector<Candidate> found;
    for (std::size_t j = 0; j < poses.size(); ++j) {
      if (is_neighbor(poses, i, j, params.discovery_range_m)) {
        found.push_back({squared_distance(poses[i].position, poses[j].position), j});
      }
    }
    sort_candidates(found, poses);
    table[i] = indices_of(found);
  }
  return table;
}

NeighborTable neighbor_table_parallel(std::span<const DevicePose> poses, const WorldParams& params) {
  GridIndex grid(params.discovery_range_m);
  grid.rebuild(poses);
  NeighborTable table(poses.size());
  const auto n = static_cast<std::ptrdiff_t>(poses.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    table[static_cast<std::size_t>(i)] = neighbors_of(poses, grid, static_cast<std::size_t>(i), params.discovery_range_m);
  }
  return table;
}

PointingTable pointing_table_serial(std::span<const DevicePose> poses, const WorldParams& params) {
  const double cos_half = std::cos(params.cone_half_angle_rad);
  PointingTable table(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) {
    std::optional<Candidate> best;
    for (std::size_t j = 0; j < poses.size(); ++j) {
      if (!is_neighbor(poses, i, j, params.discovery_range_m)) continue;
      if (!within_cone(poses[i].position, poses[i].heading, poses[j].position, cos_half)) continue;
      keep_best(best, {squared_distance(poses[i].position, poses[j].position), j}, poses);
    }
    if (best) table[i] = best->index;
  }
  return table;
}

PointingTable pointing_table_parallel(std::span<const DevicePose> poses, const WorldParams& params) {
  const double cos_half = std::cos(params.cone_half_angle_rad);
  GridIndex grid(params.discovery_range_m);
  grid.rebuild(poses);
  PointingTable table(poses.size());
  const auto n = static_cast<std::ptrdiff_t>(poses.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    table[static_cast<std::size_t>(i)] =
        pointing_of(poses, grid, static_cast<std::size_t>(i), params.discovery_range_m, cos_half);
  }
  return table;
}

}  // namespace usn::world

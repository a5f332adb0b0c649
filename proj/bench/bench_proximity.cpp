// Serial reference vs grid + OpenMP kernels for whole-floor proximity queries.

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "usn/world/kernels.hpp"

namespace {

std::vector<usn::world::DevicePose> random_floor(std::size_t n, double side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, side);
  std::uniform_real_distribution<double> angle(0.0, usn::world::kTwoPi);
  std::vector<usn::world::DevicePose> poses;
  poses.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    poses.push_back({usn::UsndId::from_number(static_cast<std::uint32_t>(i)), {coord(rng), coord(rng)}, angle(rng), true});
  }
  return poses;
}

// Constant crowd density: about one device per 4 square meters.
double side_for(std::size_t n) { return std::sqrt(4.0 * static_cast<double>(n)); }

void BM_NeighborsSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto poses = random_floor(n, side_for(n), 42);
  usn::world::WorldParams params;
  for (auto _ : state) benchmark::DoNotOptimize(usn::world::neighbor_table_serial(poses, params));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_NeighborsParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto poses = random_floor(n, side_for(n), 42);
  usn::world::WorldParams params;
  for (auto _ : state) benchmark::DoNotOptimize(usn::world::neighbor_table_parallel(poses, params));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_PointingSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto poses = random_floor(n, side_for(n), 7);
  usn::world::WorldParams params;
  for (auto _ : state) benchmark::DoNotOptimize(usn::world::pointing_table_serial(poses, params));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_PointingParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto poses = random_floor(n, side_for(n), 7);
  usn::world::WorldParams params;
  for (auto _ : state) benchmark::DoNotOptimize(usn::world::pointing_table_parallel(poses, params));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(BM_NeighborsSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_NeighborsParallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_PointingSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_PointingParallel)->RangeMultiplier(4)->Range(64, 4096);

BENCHMARK_MAIN();

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "usn/harness/scenario.hpp"
#include "usn/harness/transcript.hpp"

namespace usn::harness {

enum class Transport {
  /// Devices call UbiServ and the world directly; UbiServ calls the SN directly.
  InProcess,
  /// Every service listens on a loopback port and all calls go over HTTP.
  Loopback,
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  Transport transport = Transport::InProcess;
};

/// Boots fresh services, executes every step in order and evaluates the
/// assertions. Step failures are recorded as outcomes, not thrown; the
/// transcript's verdict carries the assertion results. Throws
/// ServiceBootFailure when a loopback service cannot start.
Transcript run_scenario(const ScenarioScript& script, const RunOptions& options = {});

/// Parses then runs. Throws ScriptParseError / FixtureParseError.
Transcript run_scenario_file(const std::filesystem::path& path, const RunOptions& options = {});

}  // namespace usn::harness

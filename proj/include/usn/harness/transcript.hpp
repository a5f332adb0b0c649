#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace usn::harness {

struct TranscriptEntry {
  std::uint64_t tick = 0;
  std::string step;
  std::string actor;
  std::string action;
  nlohmann::json outcome;
};

struct AssertionResult {
  std::string step;
  std::string ref;
  bool pass = false;
  std::string detail;
};

/// Ordered record of one scenario run. Serializes as JSON lines: a header,
/// one line per entry, then the verdict line.
struct Transcript {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string mode;
  std::vector<TranscriptEntry> entries;
  std::vector<AssertionResult> assertions;

  bool passed() const;
  std::string to_jsonl() const;
  void write(const std::filesystem::path& path) const;
};

nlohmann::json to_json(const TranscriptEntry& entry);

}  // namespace usn::harness

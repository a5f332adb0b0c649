#include "usn/harness/transcript.hpp"

#include <algorithm>
#include <fstream>

#include "usn/core/error.hpp"

namespace usn::harness {

nlohmann::json to_json(const TranscriptEntry& entry) {
  return {{"tick", entry.tick},
          {"step", entry.step},
          {"actor", entry.actor},
          {"action", entry.action},
          {"outcome", entry.outcome}};
}

bool Transcript::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.pass; });
}

std::string Transcript::to_jsonl() const {
  std::string out;
  out += nlohmann::json{{"schema", 1}, {"scenario", scenario}, {"seed", seed}, {"mode", mode}}.dump();
  out += '\n';
  for (const auto& e : entries) {
    out += to_json(e).dump();
    out += '\n';
  }
  auto results = nlohmann::json::array();
  for (const auto& a : assertions) {
    results.push_back({{"step", a.step}, {"ref", a.ref}, {"pass", a.pass}, {"detail", a.detail}});
  }
  out += nlohmann::json{{"verdict", passed() ? "pass" : "fail"}, {"assertions", results}}.dump();
  out += '\n';
  return out;
}

void Transcript::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  out << to_jsonl();
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write transcript " + path.string());
}

}  // namespace usn::harness

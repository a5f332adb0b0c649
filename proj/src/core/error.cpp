#include "usn/core/error.hpp"

#include <array>
#include <utility>

namespace usn {
namespace {

using Entry = std::pair<ErrorCode, std::string_view>;

constexpr std::array kNames = {
    Entry{ErrorCode::MalformedId, "MalformedId"},
    Entry{ErrorCode::MalformedRequest, "MalformedRequest"},
    Entry{ErrorCode::PolicyMismatch, "PolicyMismatch"},
    Entry{ErrorCode::WrongContext, "WrongContext"},
    Entry{ErrorCode::DuplicateUbiServ, "DuplicateUbiServ"},
    Entry{ErrorCode::DuplicateDevice, "DuplicateDevice"},
    Entry{ErrorCode::UnknownUbiServ, "UnknownUbiServ"},
    Entry{ErrorCode::BadSecret, "BadSecret"},
    Entry{ErrorCode::UnknownUser, "UnknownUser"},
    Entry{ErrorCode::InvalidToken, "InvalidToken"},
    Entry{ErrorCode::ExpiredToken, "ExpiredToken"},
    Entry{ErrorCode::UnknownDevice, "UnknownDevice"},
    Entry{ErrorCode::UnknownSession, "UnknownSession"},
    Entry{ErrorCode::TargetNotPresent, "TargetNotPresent"},
    Entry{ErrorCode::ServiceDisabled, "ServiceDisabled"},
    Entry{ErrorCode::UpstreamUnavailable, "UpstreamUnavailable"},
    Entry{ErrorCode::OutOfBounds, "OutOfBounds"},
    Entry{ErrorCode::NoTarget, "NoTarget"},
    Entry{ErrorCode::NotAttached, "NotAttached"},
    Entry{ErrorCode::UbiServUnreachable, "UbiServUnreachable"},
    Entry{ErrorCode::WorldUnreachable, "WorldUnreachable"},
    Entry{ErrorCode::ScriptParseError, "ScriptParseError"},
    Entry{ErrorCode::FixtureParseError, "FixtureParseError"},
    Entry{ErrorCode::ServiceBootFailure, "ServiceBootFailure"},
    Entry{ErrorCode::AssertionFailure, "AssertionFailure"},
    Entry{ErrorCode::ConfigError, "ConfigError"},
    Entry{ErrorCode::PortInUse, "PortInUse"},
};

std::string compose_message(ErrorCode code, const std::string& detail) {
  std::string msg{to_string(code)};
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<ErrorCode> error_code_from_string(std::string_view name) noexcept {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(compose_message(code, detail)), code_(code), detail_(std::move(detail)) {}

}  // namespace usn

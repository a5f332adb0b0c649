#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace usn {

// Every failure that can cross a module or wire boundary. The string form of
// each code is what appears in `{"error": <CODE>}` bodies and in transcripts.
enum class ErrorCode {
  MalformedId,
  MalformedRequest,
  PolicyMismatch,
  WrongContext,
  DuplicateUbiServ,
  DuplicateDevice,
  UnknownUbiServ,
  BadSecret,
  UnknownUser,
  InvalidToken,
  ExpiredToken,
  UnknownDevice,
  UnknownSession,
  TargetNotPresent,
  ServiceDisabled,
  UpstreamUnavailable,
  OutOfBounds,
  NoTarget,
  NotAttached,
  UbiServUnreachable,
  WorldUnreachable,
  ScriptParseError,
  FixtureParseError,
  ServiceBootFailure,
  AssertionFailure,
  ConfigError,
  PortInUse,
};

std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> error_code_from_string(std::string_view name) noexcept;

class Error : public std::runtime_error {
 public:
  explicit Error(ErrorCode code, std::string detail = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace usn

#include "usn/core/ids.hpp"

#include <cstdio>

#include "usn/core/error.hpp"

namespace usn {
namespace {

bool is_upper_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F'); }

bool is_user_char(char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

}  // namespace

bool UsndId::is_valid(std::string_view raw) noexcept {
  if (raw.size() != kPrefix.size() + kDigits || !raw.starts_with(kPrefix)) return false;
  for (char c : raw.substr(kPrefix.size())) {
    if (!is_upper_hex(c)) return false;
  }
  return true;
}

UsndId UsndId::parse(std::string_view raw) {
  if (!is_valid(raw)) throw Error(ErrorCode::MalformedId, "not a USND id: '" + std::string(raw) + "'");
  return UsndId(std::string(raw));
}

UsndId UsndId::from_number(std::uint32_t value) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "USND-%08X", value);
  return UsndId(buf);
}

bool SocialUserId::is_valid(std::string_view raw) noexcept {
  if (raw.empty() || raw.size() > kMaxLength) return false;
  for (char c : raw) {
    if (!is_user_char(c)) return false;
  }
  return true;
}

SocialUserId SocialUserId::parse(std::string_view raw) {
  if (!is_valid(raw)) throw Error(ErrorCode::MalformedId, "not a social user id: '" + std::string(raw) + "'");
  return SocialUserId(std::string(raw));
}

}  // namespace usn

#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace usn {

/// Device identity: `USND-` followed by exactly eight uppercase hex digits.
class UsndId {
 public:
  static constexpr std::string_view kPrefix = "USND-";
  static constexpr std::size_t kDigits = 8;

  /// Throws Error{MalformedId} unless `raw` matches the grammar exactly.
  static UsndId parse(std::string_view raw);
  static bool is_valid(std::string_view raw) noexcept;
  static UsndId from_number(std::uint32_t value);

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const UsndId&, const UsndId&) = default;

 private:
  explicit UsndId(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

/// Social-network-side identity: 1..64 chars of [A-Za-z0-9_].
class SocialUserId {
 public:
  static constexpr std::size_t kMaxLength = 64;

  /// Throws Error{MalformedId}.
  static SocialUserId parse(std::string_view raw);
  static bool is_valid(std::string_view raw) noexcept;

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const SocialUserId&, const SocialUserId&) = default;

 private:
  explicit SocialUserId(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

}  // namespace usn

template <>
struct std::hash<usn::UsndId> {
  std::size_t operator()(const usn::UsndId& id) const noexcept { return std::hash<std::string>{}(id.str()); }
};

template <>
struct std::hash<usn::SocialUserId> {
  std::size_t operator()(const usn::SocialUserId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "usn/core/ids.hpp"

namespace usn {

// Declaration order is the canonical order used for display and for FieldMap
// iteration.
enum class ProfileField {
  Name,
  Location,
  WorkDomain,
  ContactInfo,
  Qualifications,
  Experience,
  JobInterest,
  Pictures,
};

inline constexpr std::array kAllProfileFields = {
    ProfileField::Name,           ProfileField::Location,   ProfileField::WorkDomain,
    ProfileField::ContactInfo,    ProfileField::Qualifications, ProfileField::Experience,
    ProfileField::JobInterest,    ProfileField::Pictures,
};

std::string_view to_string(ProfileField field) noexcept;
std::optional<ProfileField> profile_field_from_string(std::string_view name) noexcept;

using FieldSet = std::set<ProfileField>;
// Pictures holds a comma-separated list of opaque asset identifiers.
using FieldMap = std::map<ProfileField, std::string>;

enum class ViewContext { Public, UbiServEvent };

std::string_view to_string(ViewContext context) noexcept;
std::optional<ViewContext> view_context_from_string(std::string_view name) noexcept;

class UserProfile {
 public:
  static constexpr std::size_t kMaxValueBytes = 4096;

  /// Throws Error{MalformedRequest} when Name is missing or a value is oversized.
  UserProfile(SocialUserId user_id, UsndId usnd_id, FieldMap fields);

  const SocialUserId& user_id() const noexcept { return user_id_; }
  const UsndId& usnd_id() const noexcept { return usnd_id_; }
  const FieldMap& fields() const noexcept { return fields_; }

  friend bool operator==(const UserProfile&, const UserProfile&) = default;

 private:
  SocialUserId user_id_;
  UsndId usnd_id_;
  FieldMap fields_;
};

struct ViewPolicy {
  SocialUserId user_id;
  ViewContext context = ViewContext::UbiServEvent;
  FieldSet allowed_fields;

  friend bool operator==(const ViewPolicy&, const ViewPolicy&) = default;
};

struct ServedProfile {
  SocialUserId user_id;
  FieldMap fields;

  friend bool operator==(const ServedProfile&, const ServedProfile&) = default;
};

/// Restricts `profile` to the fields `policy` allows. Fields allowed but not
/// stored are omitted, so a requester cannot tell "denied" from "missing".
/// Throws PolicyMismatch / WrongContext.
ServedProfile evaluate_permissions(const UserProfile& profile, const ViewPolicy& policy);

// Canonical JSON. Field sets serialize as arrays sorted by their string form.
nlohmann::json field_set_to_json(const FieldSet& set);
FieldSet field_set_from_json(const nlohmann::json& j);
nlohmann::json field_map_to_json(const FieldMap& fields);
FieldMap field_map_from_json(const nlohmann::json& j);

nlohmann::json to_json(const UserProfile& profile);
nlohmann::json to_json(const ViewPolicy& policy);
nlohmann::json to_json(const ServedProfile& profile);

// All throw Error{MalformedRequest} (or MalformedId for bad identifiers).
UserProfile user_profile_from_json(const nlohmann::json& j);
ViewPolicy view_policy_from_json(const nlohmann::json& j);
ServedProfile served_profile_from_json(const nlohmann::json& j);

}  // namespace usn

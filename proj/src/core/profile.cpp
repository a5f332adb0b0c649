#include "usn/core/profile.hpp"

#include <algorithm>
#include <vector>

#include "usn/core/error.hpp"

namespace usn {
namespace {

constexpr std::array<std::string_view, kAllProfileFields.size()> kFieldNames = {
    "name", "location", "work_domain", "contact_info", "qualifications", "experience", "job_interest", "pictures",
};

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedRequest, what); }

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object()) malformed("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string()) malformed(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string_view to_string(ProfileField field) noexcept { return kFieldNames[static_cast<std::size_t>(field)]; }

std::optional<ProfileField> profile_field_from_string(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
    if (kFieldNames[i] == name) return kAllProfileFields[i];
  }
  return std::nullopt;
}

std::string_view to_string(ViewContext context) noexcept {
  return context == ViewContext::Public ? "public" : "ubiserv_event";
}

std::optional<ViewContext> view_context_from_string(std::string_view name) noexcept {
  if (name == "public") return ViewContext::Public;
  if (name == "ubiserv_event") return ViewContext::UbiServEvent;
  return std::nullopt;
}

UserProfile::UserProfile(SocialUserId user_id, UsndId usnd_id, FieldMap fields)
    : user_id_(std::move(user_id)), usnd_id_(std::move(usnd_id)), fields_(std::move(fields)) {
  if (!fields_.contains(ProfileField::Name)) malformed("profile " + user_id_.str() + " has no name");
  for (const auto& [field, value] : fields_) {
    if (value.size() > kMaxValueBytes) {
      malformed("field " + std::string(to_string(field)) + " exceeds " + std::to_string(kMaxValueBytes) + " bytes");
    }
  }
}

ServedProfile evaluate_permissions(const UserProfile& profile, const ViewPolicy& policy) {
  if (policy.user_id != profile.user_id()) {
    throw Error(ErrorCode::PolicyMismatch, policy.user_id.str() + " != " + profile.user_id().str());
  }
  if (policy.context != ViewContext::UbiServEvent) throw Error(ErrorCode::WrongContext);

  ServedProfile served{profile.user_id(), {}};
  for (const auto& [field, value] : profile.fields()) {
    if (policy.allowed_fields.contains(field)) served.fields.emplace(field, value);
  }
  return served;
}

nlohmann::json field_set_to_json(const FieldSet& set) {
  std::vector<std::string> names;
  names.reserve(set.size());
  for (auto f : set) names.emplace_back(to_string(f));
  std::sort(names.begin(), names.end());
  return names;
}

FieldSet field_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) malformed("field set must be an array");
  FieldSet out;
  for (const auto& item : j) {
    if (!item.is_string()) malformed("field names must be strings");
    auto f = profile_field_from_string(item.get<std::string>());
    if (!f) malformed("unknown profile field '" + item.get<std::string>() + "'");
    out.insert(*f);
  }
  return out;
}

nlohmann::json field_map_to_json(const FieldMap& fields) {
  auto j = nlohmann::json::object();
  for (const auto& [field, value] : fields) j[std::string(to_string(field))] = value;
  return j;
}

FieldMap field_map_from_json(const nlohmann::json& j) {
  if (!j.is_object()) malformed("fields must be an object");
  FieldMap out;
  for (const auto& [key, value] : j.items()) {
    auto f = profile_field_from_string(key);
    if (!f) malformed("unknown profile field '" + key + "'");
    if (!value.is_string()) malformed("field '" + key + "' must be a string");
    out.emplace(*f, value.get<std::string>());
  }
  return out;
}

nlohmann::json to_json(const UserProfile& profile) {
  return {{"user_id", profile.user_id().str()},
          {"usnd_id", profile.usnd_id().str()},
          {"fields", field_map_to_json(profile.fields())}};
}

nlohmann::json to_json(const ViewPolicy& policy) {
  return {{"user_id", policy.user_id.str()},
          {"context", std::string(to_string(policy.context))},
          {"allowed_fields", field_set_to_json(policy.allowed_fields)}};
}

nlohmann::json to_json(const ServedProfile& profile) {
  return {{"user_id", profile.user_id.str()}, {"fields", field_map_to_json(profile.fields)}};
}

UserProfile user_profile_from_json(const nlohmann::json& j) {
  return UserProfile(SocialUserId::parse(require_string(j, "user_id")), UsndId::parse(require_string(j, "usnd_id")),
                     field_map_from_json(require(j, "fields")));
}

ViewPolicy view_policy_from_json(const nlohmann::json& j) {
  auto ctx = view_context_from_string(require_string(j, "context"));
  if (!ctx) malformed("unknown context");
  return ViewPolicy{SocialUserId::parse(require_string(j, "user_id")), *ctx,
                    field_set_from_json(require(j, "allowed_fields"))};
}

ServedProfile served_profile_from_json(const nlohmann::json& j) {
  return ServedProfile{SocialUserId::parse(require_string(j, "user_id")), field_map_from_json(require(j, "fields"))};
}

}  // namespace usn

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "usn/core/profile.hpp"

namespace usn::device {

/// What the device screen shows for one served profile.
struct DisplayRecord {
  SocialUserId target_user_id;
  std::vector<std::pair<std::string, std::string>> lines;

  friend bool operator==(const DisplayRecord&, const DisplayRecord&) = default;
};

std::string_view label_for(ProfileField field) noexcept;

/// Pure mapping: one line per present field, in canonical field order.
DisplayRecord render(const ServedProfile& profile);

nlohmann::json to_json(const DisplayRecord& record);

}  // namespace usn::device

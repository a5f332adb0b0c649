#include "usn/device/display.hpp"

#include <array>

namespace usn::device {

std::string_view label_for(ProfileField field) noexcept {
  static constexpr std::array<std::string_view, kAllProfileFields.size()> kLabels = {
      "Name", "Location", "Work domain", "Contact", "Qualifications", "Experience", "Job interest", "Pictures",
  };
  return kLabels[static_cast<std::size_t>(field)];
}

DisplayRecord render(const ServedProfile& profile) {
  DisplayRecord record{profile.user_id, {}};
  for (auto field : kAllProfileFields) {
    if (auto it = profile.fields.find(field); it != profile.fields.end()) {
      record.lines.emplace_back(std::string(label_for(field)), it->second);
    }
  }
  return record;
}

nlohmann::json to_json(const DisplayRecord& record) {
  auto lines = nlohmann::json::array();
  for (const auto& [label, value] : record.lines) lines.push_back({label, value});
  return {{"target_user_id", record.target_user_id.str()}, {"lines", lines}};
}

}  // namespace usn::device

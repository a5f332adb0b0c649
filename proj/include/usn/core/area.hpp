#pragma once

#include <string>

#include <json.hpp>

namespace usn {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Closed axis-aligned rectangle in meters.
struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool contains(Vec2 p) const noexcept { return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y; }

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// The coverage zone of one social event. Exactly one UbiServ serves it.
struct ServiceArea {
  std::string area_id;
  std::string name;
  Bounds bounds;

  /// Throws Error{ConfigError} on an empty id or a degenerate rectangle.
  void validate() const;

  friend bool operator==(const ServiceArea&, const ServiceArea&) = default;
};

nlohmann::json to_json(const Bounds& b);
Bounds bounds_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ServiceArea& area);
/// Throws Error{ConfigError}.
ServiceArea service_area_from_json(const nlohmann::json& j);

}  // namespace usn

#pragma once

#include <cmath>
#include <numbers>

#include "usn/core/area.hpp"
#include "usn/core/ids.hpp"

namespace usn::world {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle into [0, 2π).
inline double normalize_heading(double radians) {
  double h = std::fmod(radians, kTwoPi);
  if (h < 0.0) h += kTwoPi;
  if (h >= kTwoPi) h = 0.0;
  return h;
}

inline double squared_distance(Vec2 a, Vec2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return dx * dx + dy * dy;
}

/// Inclusive: distance ≤ range.
inline bool within_range(Vec2 from, Vec2 to, double range) { return squared_distance(from, to) <= range * range; }

/// Inclusive: angular deviation of `to` from the heading ≤ the half-angle,
/// given as its cosine. A coincident point has no bearing and is never in
/// the cone.
inline bool within_cone(Vec2 from, double heading, Vec2 to, double cos_half_angle) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double dist = std::sqrt(dx * dx + dy * dy);
  if (dist == 0.0) return false;
  return (dx * std::cos(heading) + dy * std::sin(heading)) / dist >= cos_half_angle;
}

struct DevicePose {
  UsndId usnd_id;
  Vec2 position;
  double heading = 0.0;
  bool beacon_enabled = true;

  friend bool operator==(const DevicePose&, const DevicePose&) = default;
};

struct WorldParams {
  double discovery_range_m = 4.5;
  double cone_half_angle_rad = std::numbers::pi / 6.0;

  /// Throws Error{ConfigError}.
  void validate() const;
};

/// Candidate ordering: nearer first, then ascending UsndId.
inline bool closer(double d2_a, const UsndId& a, double d2_b, const UsndId& b) {
  if (d2_a != d2_b) return d2_a < d2_b;
  return a < b;
}

}  // namespace usn::world

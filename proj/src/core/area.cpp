#include "usn/core/area.hpp"

#include "usn/core/error.hpp"

namespace usn {

void ServiceArea::validate() const {
  if (area_id.empty()) throw Error(ErrorCode::ConfigError, "area_id must be non-empty");
  if (!(bounds.max_x > bounds.min_x) || !(bounds.max_y > bounds.min_y)) {
    throw Error(ErrorCode::ConfigError, "area bounds must satisfy max > min on both axes");
  }
}

nlohmann::json to_json(const Bounds& b) {
  return {{"min_x", b.min_x}, {"min_y", b.min_y}, {"max_x", b.max_x}, {"max_y", b.max_y}};
}

Bounds bounds_from_json(const nlohmann::json& j) {
  try {
    return Bounds{j.at("min_x").get<double>(), j.at("min_y").get<double>(), j.at("max_x").get<double>(),
                  j.at("max_y").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bounds: ") + e.what());
  }
}

nlohmann::json to_json(const ServiceArea& area) {
  return {{"area_id", area.area_id}, {"name", area.name}, {"bounds", to_json(area.bounds)}};
}

ServiceArea service_area_from_json(const nlohmann::json& j) {
  ServiceArea area;
  try {
    area.area_id = j.at("area_id").get<std::string>();
    area.name = j.value("name", area.area_id);
    area.bounds = bounds_from_json(j.at("bounds"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("service area: ") + e.what());
  }
  area.validate();
  return area;
}

}  // namespace usn

#pragma once

#include <string>

#include "usn/net/http_service.hpp"
#include "usn/world/world.hpp"

namespace usn::world {

struct WorldServiceConfig {
  ServiceArea area;
  WorldParams params;
  std::string host = "127.0.0.1";
  int port = 0;

  /// {area_id, name, bounds, discovery_range_m?, cone_half_angle_rad?, host?, port?}
  static WorldServiceConfig from_json(const nlohmann::json& j);
};

/// GET /world, POST /world/step, POST /world/place, POST /world/beacon,
/// plus the device-facing queries GET /world/neighbors and GET /world/pointing.
class WorldHttpServer : public net::HttpService {
 public:
  explicit WorldHttpServer(World& world);

 private:
  World& world_;
};

}  // namespace usn::world

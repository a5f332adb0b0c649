#include "usn/world/http_server.hpp"

namespace usn::world {
namespace {

UsndId id_field(const nlohmann::json& body) {
  auto it = body.find("usnd_id");
  if (it == body.end() || !it->is_string()) throw Error(ErrorCode::MalformedId, "usnd_id");
  return UsndId::parse(it->get<std::string>());
}

double number_field(const nlohmann::json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_number()) throw Error(ErrorCode::MalformedRequest, key);
  return it->get<double>();
}

nlohmann::json id_list(const std::vector<UsndId>& ids) {
  auto out = nlohmann::json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

}  // namespace

WorldServiceConfig WorldServiceConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "world config must be a JSON object");
  WorldServiceConfig c;
  c.area = service_area_from_json(j);
  try {
    c.params.discovery_range_m = j.value("discovery_range_m", c.params.discovery_range_m);
    c.params.cone_half_angle_rad = j.value("cone_half_angle_rad", c.params.cone_half_angle_rad);
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("world config: ") + e.what());
  }
  c.params.validate();
  return c;
}

WorldHttpServer::WorldHttpServer(World& world) : world_(world) {
  using net::guard;
  using net::write_json;
  const nlohmann::json ok = {{"ok", true}};

  server().Get("/world", guard([this](const httplib::Request&, httplib::Response& res) {
    write_json(res, world_.snapshot());
  }));

  server().Post("/world/place", guard([this, ok](const httplib::Request& req, httplib::Response& res) {
    auto body = net::parse_body(req);
    world_.place_device(id_field(body), {number_field(body, "x"), number_field(body, "y")},
                        body.value("heading", 0.0));
    write_json(res, ok);
  }));

  server().Post("/world/step", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto body = net::parse_body(req);
    std::vector<Move> moves;
    for (const auto& m : body.value("moves", nlohmann::json::array())) {
      moves.push_back({id_field(m), {number_field(m, "x"), number_field(m, "y")}, number_field(m, "heading")});
    }
    write_json(res, {{"tick", world_.step(moves)}});
  }));

  server().Post("/world/beacon", guard([this, ok](const httplib::Request& req, httplib::Response& res) {
    auto body = net::parse_body(req);
    auto enabled = body.find("enabled");
    if (enabled == body.end() || !enabled->is_boolean()) throw Error(ErrorCode::MalformedRequest, "enabled");
    world_.set_beacon(id_field(body), enabled->get<bool>());
    write_json(res, ok);
  }));

  server().Get("/world/neighbors", guard([this](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("usnd_id")) {
      auto table = nlohmann::json::object();
      for (const auto& [id, list] : world_.neighbor_table()) table[id.str()] = id_list(list);
      write_json(res, {{"tick", world_.tick()}, {"table", table}});
      return;
    }
    auto id = UsndId::parse(req.get_param_value("usnd_id"));
    write_json(res, {{"usnd_id", id.str()}, {"neighbors", id_list(world_.neighbors(id))}});
  }));

  server().Get("/world/pointing", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto id = UsndId::parse(net::require_param(req, "usnd_id"));
    write_json(res, {{"usnd_id", id.str()}, {"target", world_.resolve_pointing(id).str()}});
  }));
}

}  // namespace usn::world

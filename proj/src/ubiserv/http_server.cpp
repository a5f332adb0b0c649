#include "usn/ubiserv/http_server.hpp"

namespace usn::ubiserv {
namespace {

std::string session_token_of(const nlohmann::json& body) {
  auto it = body.find("session_token");
  if (it == body.end() || !it->is_string()) throw Error(ErrorCode::UnknownSession, "missing session_token");
  return it->get<std::string>();
}

}  // namespace

UbiServHttpServer::UbiServHttpServer(UbiServ& ubiserv) : ubiserv_(ubiserv) {
  using net::guard;
  using net::write_json;
  const nlohmann::json ok = {{"ok", true}};

  server().Post("/register", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto body = net::parse_body(req);
    if (!body.contains("usnd_id") || !body["usnd_id"].is_string()) throw Error(ErrorCode::MalformedId);
    auto session = ubiserv_.register_usnd(UsndId::parse(body["usnd_id"].get<std::string>()));
    write_json(res, {{"session_token", session.session_token}, {"area_id", session.area_id}});
  }));

  server().Post("/deregister", guard([this, ok](const httplib::Request& req, httplib::Response& res) {
    ubiserv_.deregister_usnd(session_token_of(net::parse_body(req)));
    write_json(res, ok);
  }));

  server().Post("/service", guard([this, ok](const httplib::Request& req, httplib::Response& res) {
    auto body = net::parse_body(req);
    auto enabled = body.find("enabled");
    if (enabled == body.end() || !enabled->is_boolean()) throw Error(ErrorCode::MalformedRequest, "enabled");
    ubiserv_.set_service_enabled(session_token_of(body), enabled->get<bool>());
    write_json(res, ok);
  }));

  server().Get("/profile", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto token = net::require_header(req, "X-Session-Token", ErrorCode::UnknownSession);
    auto target = UsndId::parse(net::require_param(req, "target"));
    write_json(res, to_json(ubiserv_.handle_profile_request(token, target)));
  }));

  server().Get("/health", guard([this](const httplib::Request&, httplib::Response& res) {
    write_json(res, {{"area_id", ubiserv_.area().area_id}, {"registered_count", ubiserv_.registered_count()}});
  }));
}

}  // namespace usn::ubiserv

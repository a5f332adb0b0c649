#include "usn/sn/http_server.hpp"

namespace usn::sn {
namespace {

constexpr const char* kTokenHeader = "X-UbiServ-Token";

std::string string_field(const nlohmann::json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::MalformedRequest, std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

SnHttpServer::SnHttpServer(SocialNetwork& network) : network_(network) {
  using net::guard;
  using net::write_json;
  const nlohmann::json ok = {{"ok", true}};

  server().Post("/ubiserv/register", guard([this, ok](const httplib::Request& req, httplib::Response& res) {
    auto body = net::parse_body(req);
    network_.register_ubiserv({string_field(body, "ubiserv_id"), string_field(body, "secret")});
    write_json(res, ok);
  }));

  server().Post("/ubiserv/auth", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto body = net::parse_body(req);
    auto token = network_.authenticate(string_field(body, "ubiserv_id"), string_field(body, "secret"));
    write_json(res, {{"token", token.token}, {"ttl_seconds", token.ttl_seconds}});
  }));

  server().Post("/users", guard([this, ok](const httplib::Request& req, httplib::Response& res) {
    network_.create_user(user_profile_from_json(net::parse_body(req)));
    write_json(res, ok);
  }));

  server().Put(R"(/users/([^/]+)/policy)", guard([this, ok](const httplib::Request& req, httplib::Response& res) {
    auto user_id = SocialUserId::parse(req.matches[1].str());
    auto body = net::parse_body(req);
    body["user_id"] = user_id.str();
    network_.set_view_policy(user_id, view_policy_from_json(body));
    write_json(res, ok);
  }));

  server().Get("/lookup", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto token = net::require_header(req, kTokenHeader, ErrorCode::InvalidToken);
    auto usnd = UsndId::parse(net::require_param(req, "usnd_id"));
    write_json(res, {{"user_id", network_.lookup_user_by_usnd(token, usnd).str()}});
  }));

  server().Get(R"(/profiles/([^/]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto token = net::require_header(req, kTokenHeader, ErrorCode::InvalidToken);
    auto target = SocialUserId::parse(req.matches[1].str());
    write_json(res, to_json(network_.serve_ubiserv_request(token, target)));
  }));

  server().Get("/admin/store", guard([this](const httplib::Request&, httplib::Response& res) {
    write_json(res, network_.snapshot().to_json());
  }));
}

}  // namespace usn::sn

#include "usn/device/endpoints.hpp"

#include "usn/core/error.hpp"
#include "usn/ubiserv/ubiserv.hpp"
#include "usn/world/world.hpp"

namespace usn::device {

void LocalUbiServEndpoint::ensure_reachable() const {
  if (!reachable_.load()) throw Error(ErrorCode::UbiServUnreachable);
}

SessionGrant LocalUbiServEndpoint::register_usnd(const UsndId& usnd_id) {
  ensure_reachable();
  auto session = server_.register_usnd(usnd_id);
  return {session.session_token, session.area_id};
}

void LocalUbiServEndpoint::deregister(const std::string& session_token) {
  ensure_reachable();
  server_.deregister_usnd(session_token);
}

void LocalUbiServEndpoint::set_service_enabled(const std::string& session_token, bool enabled) {
  ensure_reachable();
  server_.set_service_enabled(session_token, enabled);
}

ServedProfile LocalUbiServEndpoint::request_profile(const std::string& session_token, const UsndId& target) {
  ensure_reachable();
  return server_.handle_profile_request(session_token, target);
}

std::vector<UsndId> LocalWorldEndpoint::neighbors(const UsndId& self) { return world_.neighbors(self); }

UsndId LocalWorldEndpoint::resolve_pointing(const UsndId& self) { return world_.resolve_pointing(self); }

HttpUbiServEndpoint::HttpUbiServEndpoint(const std::string& base_url)
    : client_(base_url, ErrorCode::UbiServUnreachable) {}

SessionGrant HttpUbiServEndpoint::register_usnd(const UsndId& usnd_id) {
  auto reply = client_.post("/register", {{"usnd_id", usnd_id.str()}});
  return {reply.at("session_token").get<std::string>(), reply.at("area_id").get<std::string>()};
}

void HttpUbiServEndpoint::deregister(const std::string& session_token) {
  client_.post("/deregister", {{"session_token", session_token}});
}

void HttpUbiServEndpoint::set_service_enabled(const std::string& session_token, bool enabled) {
  client_.post("/service", {{"session_token", session_token}, {"enabled", enabled}});
}

ServedProfile HttpUbiServEndpoint::request_profile(const std::string& session_token, const UsndId& target) {
  auto reply = client_.get("/profile?target=" + net::url_encode(target.str()), {{"X-Session-Token", session_token}});
  return served_profile_from_json(reply);
}

HttpWorldEndpoint::HttpWorldEndpoint(const std::string& base_url) : client_(base_url, ErrorCode::WorldUnreachable) {}

std::vector<UsndId> HttpWorldEndpoint::neighbors(const UsndId& self) {
  auto reply = client_.get("/world/neighbors?usnd_id=" + net::url_encode(self.str()));
  std::vector<UsndId> out;
  for (const auto& id : reply.at("neighbors")) out.push_back(UsndId::parse(id.get<std::string>()));
  return out;
}

UsndId HttpWorldEndpoint::resolve_pointing(const UsndId& self) {
  auto reply = client_.get("/world/pointing?usnd_id=" + net::url_encode(self.str()));
  return UsndId::parse(reply.at("target").get<std::string>());
}

}  // namespace usn::device

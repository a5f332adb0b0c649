#include "usn/ubiserv/sn_client.hpp"

#include "usn/core/error.hpp"
#include "usn/sn/social_network.hpp"

namespace usn::ubiserv {

void InProcessSocialNetworkApi::ensure_reachable() const {
  if (!reachable_.load()) throw Error(ErrorCode::UpstreamUnavailable, "social network unreachable");
}

void InProcessSocialNetworkApi::register_ubiserv(const std::string& ubiserv_id, const std::string& secret) {
  ensure_reachable();
  network_.register_ubiserv({ubiserv_id, secret});
}

SnGrant InProcessSocialNetworkApi::authenticate(const std::string& ubiserv_id, const std::string& secret) {
  ensure_reachable();
  auto token = network_.authenticate(ubiserv_id, secret);
  return {token.token, token.ttl_seconds};
}

SocialUserId InProcessSocialNetworkApi::lookup_user_by_usnd(const std::string& token, const UsndId& usnd_id) {
  ensure_reachable();
  return network_.lookup_user_by_usnd(token, usnd_id);
}

ServedProfile InProcessSocialNetworkApi::serve_ubiserv_request(const std::string& token,
                                                               const SocialUserId& target) {
  ensure_reachable();
  return network_.serve_ubiserv_request(token, target);
}

HttpSocialNetworkApi::HttpSocialNetworkApi(const std::string& base_url)
    : client_(base_url, ErrorCode::UpstreamUnavailable) {}

void HttpSocialNetworkApi::register_ubiserv(const std::string& ubiserv_id, const std::string& secret) {
  client_.post("/ubiserv/register", {{"ubiserv_id", ubiserv_id}, {"secret", secret}});
}

SnGrant HttpSocialNetworkApi::authenticate(const std::string& ubiserv_id, const std::string& secret) {
  auto reply = client_.post("/ubiserv/auth", {{"ubiserv_id", ubiserv_id}, {"secret", secret}});
  return {reply.at("token").get<std::string>(), reply.at("ttl_seconds").get<std::int64_t>()};
}

SocialUserId HttpSocialNetworkApi::lookup_user_by_usnd(const std::string& token, const UsndId& usnd_id) {
  auto reply = client_.get("/lookup?usnd_id=" + net::url_encode(usnd_id.str()), {{"X-UbiServ-Token", token}});
  return SocialUserId::parse(reply.at("user_id").get<std::string>());
}

ServedProfile HttpSocialNetworkApi::serve_ubiserv_request(const std::string& token, const SocialUserId& target) {
  auto reply = client_.get("/profiles/" + target.str(), {{"X-UbiServ-Token", token}});
  return served_profile_from_json(reply);
}

}  // namespace usn::ubiserv

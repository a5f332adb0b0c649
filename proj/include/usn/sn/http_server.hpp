#pragma once

#include "usn/net/http_service.hpp"
#include "usn/sn/social_network.hpp"

namespace usn::sn {

/// JSON API of the social network:
///   POST /ubiserv/register, POST /ubiserv/auth, POST /users,
///   PUT /users/{id}/policy, GET /lookup?usnd_id=, GET /profiles/{id},
///   GET /admin/store (full store dump, used by seeding checks).
class SnHttpServer : public net::HttpService {
 public:
  explicit SnHttpServer(SocialNetwork& network);

 private:
  SocialNetwork& network_;
};

}  // namespace usn::sn

#pragma once

#include "usn/net/http_service.hpp"
#include "usn/ubiserv/ubiserv.hpp"

namespace usn::ubiserv {

/// POST /register, POST /deregister, POST /service,
/// GET /profile?target=<usnd_id> (X-Session-Token), GET /health.
class UbiServHttpServer : public net::HttpService {
 public:
  explicit UbiServHttpServer(UbiServ& ubiserv);

 private:
  UbiServ& ubiserv_;
};

}  // namespace usn::ubiserv

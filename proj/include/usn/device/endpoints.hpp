#pragma once

#include <atomic>
#include <string>
#include <vector>

#include "usn/core/ids.hpp"
#include "usn/core/profile.hpp"
#include "usn/net/json_client.hpp"

namespace usn::ubiserv {
class UbiServ;
}
namespace usn::world {
class World;
}

namespace usn::device {

struct SessionGrant {
  std::string session_token;
  std::string area_id;
};

/// The device's view of its local UbiServ. Unreachable servers surface as
/// Error{UbiServUnreachable}; server errors keep their codes.
class UbiServEndpoint {
 public:
  virtual ~UbiServEndpoint() = default;

  virtual SessionGrant register_usnd(const UsndId& usnd_id) = 0;
  virtual void deregister(const std::string& session_token) = 0;
  virtual void set_service_enabled(const std::string& session_token, bool enabled) = 0;
  virtual ServedProfile request_profile(const std::string& session_token, const UsndId& target) = 0;
};

/// The device's radio: beacon discovery and pointing.
class WorldEndpoint {
 public:
  virtual ~WorldEndpoint() = default;

  virtual std::vector<UsndId> neighbors(const UsndId& self) = 0;
  virtual UsndId resolve_pointing(const UsndId& self) = 0;
};

class LocalUbiServEndpoint final : public UbiServEndpoint {
 public:
  explicit LocalUbiServEndpoint(ubiserv::UbiServ& server) : server_(server) {}

  void set_reachable(bool reachable) noexcept { reachable_.store(reachable); }

  SessionGrant register_usnd(const UsndId& usnd_id) override;
  void deregister(const std::string& session_token) override;
  void set_service_enabled(const std::string& session_token, bool enabled) override;
  ServedProfile request_profile(const std::string& session_token, const UsndId& target) override;

 private:
  void ensure_reachable() const;

  ubiserv::UbiServ& server_;
  std::atomic<bool> reachable_{true};
};

class LocalWorldEndpoint final : public WorldEndpoint {
 public:
  explicit LocalWorldEndpoint(world::World& world) : world_(world) {}

  std::vector<UsndId> neighbors(const UsndId& self) override;
  UsndId resolve_pointing(const UsndId& self) override;

 private:
  world::World& world_;
};

class HttpUbiServEndpoint final : public UbiServEndpoint {
 public:
  explicit HttpUbiServEndpoint(const std::string& base_url);

  SessionGrant register_usnd(const UsndId& usnd_id) override;
  void deregister(const std::string& session_token) override;
  void set_service_enabled(const std::string& session_token, bool enabled) override;
  ServedProfile request_profile(const std::string& session_token, const UsndId& target) override;

 private:
  net::JsonClient client_;
};

class HttpWorldEndpoint final : public WorldEndpoint {
 public:
  explicit HttpWorldEndpoint(const std::string& base_url);

  std::vector<UsndId> neighbors(const UsndId& self) override;
  UsndId resolve_pointing(const UsndId& self) override;

 private:
  net::JsonClient client_;
};

}  // namespace usn::device

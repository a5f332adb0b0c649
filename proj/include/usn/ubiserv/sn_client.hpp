#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

#include "usn/core/ids.hpp"
#include "usn/core/profile.hpp"
#include "usn/net/json_client.hpp"

namespace usn::sn {
class SocialNetwork;
}

namespace usn::ubiserv {

struct SnGrant {
  std::string token;
  std::int64_t ttl_seconds = 0;
};

/// What UbiServ needs from the social network. Transport failures surface
/// as Error{UpstreamUnavailable}; SN-side errors keep their own codes.
class SocialNetworkApi {
 public:
  virtual ~SocialNetworkApi() = default;

  virtual void register_ubiserv(const std::string& ubiserv_id, const std::string& secret) = 0;
  virtual SnGrant authenticate(const std::string& ubiserv_id, const std::string& secret) = 0;
  virtual SocialUserId lookup_user_by_usnd(const std::string& token, const UsndId& usnd_id) = 0;
  virtual ServedProfile serve_ubiserv_request(const std::string& token, const SocialUserId& target) = 0;
};

/// Direct calls into a SocialNetwork living in the same process. The
/// reachability switch simulates the network going down.
class InProcessSocialNetworkApi final : public SocialNetworkApi {
 public:
  explicit InProcessSocialNetworkApi(sn::SocialNetwork& network) : network_(network) {}

  void set_reachable(bool reachable) noexcept { reachable_.store(reachable); }

  void register_ubiserv(const std::string& ubiserv_id, const std::string& secret) override;
  SnGrant authenticate(const std::string& ubiserv_id, const std::string& secret) override;
  SocialUserId lookup_user_by_usnd(const std::string& token, const UsndId& usnd_id) override;
  ServedProfile serve_ubiserv_request(const std::string& token, const SocialUserId& target) override;

 private:
  void ensure_reachable() const;

  sn::SocialNetwork& network_;
  std::atomic<bool> reachable_{true};
};

class HttpSocialNetworkApi final : public SocialNetworkApi {
 public:
  explicit HttpSocialNetworkApi(const std::string& base_url);

  void register_ubiserv(const std::string& ubiserv_id, const std::string& secret) override;
  SnGrant authenticate(const std::string& ubiserv_id, const std::string& secret) override;
  SocialUserId lookup_user_by_usnd(const std::string& token, const UsndId& usnd_id) override;
  ServedProfile serve_ubiserv_request(const std::string& token, const SocialUserId& target) override;

 private:
  net::JsonClient client_;
};

}  // namespace usn::ubiserv

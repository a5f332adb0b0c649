#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_set>

#include <json.hpp>

#include "usn/core/area.hpp"
#include "usn/core/clock.hpp"
#include "usn/core/token.hpp"
#include "usn/ubiserv/cache.hpp"
#include "usn/ubiserv/presence.hpp"
#include "usn/ubiserv/sn_client.hpp"

namespace usn::ubiserv {

struct UbiServConfig {
  ServiceArea area;
  std::string sn_base_url;
  std::string ubiserv_id;
  std::string secret;
  std::int64_t cache_ttl_seconds = 30;
  /// Upper bound on how long an SN token is used before re-authenticating,
  /// in addition to the TTL the SN grants.
  std::int64_t token_ttl_seconds = 3600;
  /// 0 disables the idle timeout.
  std::int64_t idle_timeout_seconds = 0;
  std::string host = "127.0.0.1";
  int port = 0;

  /// Throws Error{ConfigError}.
  static UbiServConfig from_json(const nlohmann::json& j);
};

/// Per-service-area server. Registers devices, tracks presence, and serves
/// profiles only when requester and target are both present here and the
/// target has not opted out.
class UbiServ {
 public:
  UbiServ(UbiServConfig config, std::shared_ptr<SocialNetworkApi> sn, std::shared_ptr<const Clock> clock,
          std::optional<std::uint64_t> token_seed = std::nullopt);

  Session register_usnd(const UsndId& usnd_id);
  /// Throws UnknownSession.
  void deregister_usnd(const std::string& session_token);
  /// Throws UnknownSession.
  void set_service_enabled(const std::string& session_token, bool enabled);

  /// Throws UnknownSession, TargetNotPresent, ServiceDisabled, then any of
  /// UpstreamUnavailable / UnknownDevice / UnknownUser from the fetch.
  ServedProfile handle_profile_request(const std::string& session_token, const UsndId& target);

  /// Cached read-through fetch from the social network.
  ServedProfile fetch_profile(const SocialUserId& target);

  const ServiceArea& area() const noexcept { return config_.area; }
  const UbiServConfig& config() const noexcept { return config_; }
  std::size_t registered_count() const;
  std::optional<Session> session_for(const UsndId& usnd_id) const;
  bool registry_consistent() const;

 private:
  SocialUserId resolve_user(const UsndId& usnd_id);
  std::string current_token();
  std::string reauthenticate();

  template <class Call>
  auto with_sn_token(Call&& call);

  UbiServConfig config_;
  std::shared_ptr<SocialNetworkApi> sn_;
  std::shared_ptr<const Clock> clock_;
  TokenGenerator session_tokens_;

  mutable std::shared_mutex registry_mutex_;
  PresenceRegistry registry_;
  std::unordered_set<std::string> issued_tokens_;

  ProfileCache cache_;

  std::mutex auth_mutex_;
  std::optional<std::string> sn_token_;
  Duration sn_token_expiry_{};
};

}  // namespace usn::ubiserv

#include "usn/ubiserv/ubiserv.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "usn/core/error.hpp"

namespace usn::ubiserv {

UbiServConfig UbiServConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "ubiserv config must be a JSON object");
  UbiServConfig c;
  try {
    c.area = service_area_from_json(j);
    c.sn_base_url = j.at("sn_base_url").get<std::string>();
    c.ubiserv_id = j.at("ubiserv_id").get<std::string>();
    c.secret = j.at("secret").get<std::string>();
    c.cache_ttl_seconds = j.value("cache_ttl_seconds", c.cache_ttl_seconds);
    c.token_ttl_seconds = j.value("token_ttl_seconds", c.token_ttl_seconds);
    c.idle_timeout_seconds = j.value("idle_timeout_seconds", c.idle_timeout_seconds);
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("ubiserv config: ") + e.what());
  }
  if (c.ubiserv_id.empty()) throw Error(ErrorCode::ConfigError, "ubiserv_id must be non-empty");
  if (c.cache_ttl_seconds < 0 || c.token_ttl_seconds <= 0 || c.idle_timeout_seconds < 0) {
    throw Error(ErrorCode::ConfigError, "ttl values out of range");
  }
  return c;
}

UbiServ::UbiServ(UbiServConfig config, std::shared_ptr<SocialNetworkApi> sn, std::shared_ptr<const Clock> clock,
                 std::optional<std::uint64_t> token_seed)
    : config_(std::move(config)),
      sn_(std::move(sn)),
      clock_(std::move(clock)),
      session_tokens_(token_seed),
      cache_(seconds(config_.cache_ttl_seconds)) {
  config_.area.validate();
}

Session UbiServ::register_usnd(const UsndId& usnd_id) {
  const auto now = clock_->now();
  std::unique_lock lock(registry_mutex_);
  std::string token;
  do {
    token = session_tokens_.next();
  } while (!issued_tokens_.insert(token).second);
  Session session{token, usnd_id, config_.area.area_id, now, now, true};
  spdlog::debug("ubiserv[{}]: register {}", config_.area.area_id, usnd_id.str());
  return registry_.add(std::move(session));
}

void UbiServ::deregister_usnd(const std::string& session_token) {
  std::unique_lock lock(registry_mutex_);
  if (!registry_.remove(session_token)) throw Error(ErrorCode::UnknownSession);
}

void UbiServ::set_service_enabled(const std::string& session_token, bool enabled) {
  std::unique_lock lock(registry_mutex_);
  auto* session = registry_.find(session_token);
  if (session == nullptr) throw Error(ErrorCode::UnknownSession);
  session->service_enabled = enabled;
}

ServedProfile UbiServ::handle_profile_request(const std::string& session_token, const UsndId& target) {
  const auto now = clock_->now();
  {
    // The whole authorization conjunction is decided under one lock.
    auto decide = [&](PresenceRegistry& reg) {
      auto* requester = reg.find(session_token);
      if (requester == nullptr) throw Error(ErrorCode::UnknownSession);
      const auto* target_session = reg.find_by_usnd(target);
      if (target_session == nullptr) throw Error(ErrorCode::TargetNotPresent, target.str());
      if (!target_session->service_enabled) throw Error(ErrorCode::ServiceDisabled, target.str());
      return requester;
    };
    if (config_.idle_timeout_seconds > 0) {
      std::unique_lock lock(registry_mutex_);
      registry_.purge_idle(now, seconds(config_.idle_timeout_seconds));
      decide(registry_)->last_seen = now;
    } else {
      std::shared_lock lock(registry_mutex_);
      decide(registry_);
    }
  }
  return fetch_profile(resolve_user(target));
}

template <class Call>
auto UbiServ::with_sn_token(Call&& call) {
  auto token = current_token();
  try {
    return call(token);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ExpiredToken && e.code() != ErrorCode::InvalidToken) throw;
    spdlog::info("ubiserv[{}]: SN token rejected ({}), re-authenticating", config_.area.area_id, to_string(e.code()));
  }
  return call(reauthenticate());
}

SocialUserId UbiServ::resolve_user(const UsndId& usnd_id) {
  if (auto cached = cache_.binding(usnd_id, clock_->now())) return *cached;
  auto user = with_sn_token([&](const std::string& token) { return sn_->lookup_user_by_usnd(token, usnd_id); });
  cache_.store_binding(usnd_id, user, clock_->now());
  return user;
}

ServedProfile UbiServ::fetch_profile(const SocialUserId& target) {
  if (auto cached = cache_.profile(target, clock_->now())) return *cached;
  auto served = with_sn_token([&](const std::string& token) { return sn_->serve_ubiserv_request(token, target); });
  cache_.store_profile(served, clock_->now());
  return served;
}

std::string UbiServ::current_token() {
  {
    std::lock_guard lock(auth_mutex_);
    if (sn_token_ && clock_->now() < sn_token_expiry_) return *sn_token_;
  }
  return reauthenticate();
}

std::string UbiServ::reauthenticate() {
  std::lock_guard lock(auth_mutex_);
  SnGrant grant;
  try {
    grant = sn_->authenticate(config_.ubiserv_id, config_.secret);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnknownUbiServ) throw;
    try {
      sn_->register_ubiserv(config_.ubiserv_id, config_.secret);
    } catch (const Error& reg) {
      if (reg.code() != ErrorCode::DuplicateUbiServ) throw;
    }
    grant = sn_->authenticate(config_.ubiserv_id, config_.secret);
  }
  const auto ttl = std::min(grant.ttl_seconds, config_.token_ttl_seconds);
  sn_token_ = grant.token;
  sn_token_expiry_ = clock_->now() + seconds(ttl);
  return grant.token;
}

std::size_t UbiServ::registered_count() const {
  std::shared_lock lock(registry_mutex_);
  return registry_.size();
}

std::optional<Session> UbiServ::session_for(const UsndId& usnd_id) const {
  std::shared_lock lock(registry_mutex_);
  if (const auto* s = registry_.find_by_usnd(usnd_id)) return *s;
  return std::nullopt;
}

bool UbiServ::registry_consistent() const {
  std::shared_lock lock(registry_mutex_);
  return registry_.consistent();
}

}  // namespace usn::ubiserv

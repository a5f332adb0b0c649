#include "usn/sn/social_network.hpp"

#include <fstream>
#include <mutex>

#include <spdlog/spdlog.h>

#include "usn/core/error.hpp"

namespace usn::sn {

ViewPolicy default_event_policy(const SocialUserId& user_id) {
  return ViewPolicy{user_id, ViewContext::UbiServEvent, {ProfileField::Name}};
}

SocialNetwork::SocialNetwork(std::shared_ptr<const Clock> clock, SocialNetworkOptions options)
    : clock_(std::move(clock)), options_(std::move(options)), tokens_gen_(options_.token_seed) {
  if (options_.token_ttl_seconds <= 0) throw Error(ErrorCode::ConfigError, "token_ttl_seconds must be > 0");
  if (options_.store_path && std::filesystem::exists(*options_.store_path)) {
    std::ifstream in(*options_.store_path);
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ConfigError, "store file is not valid JSON");
    try {
      store_ = ProfileStore::from_json(j);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, std::string("store file: ") + e.what());
    }
    spdlog::info("sn: loaded {} profiles from {}", store_.profile_count(), options_.store_path->string());
  }
}

void SocialNetwork::persist_locked() const {
  if (!options_.store_path) return;
  const auto& path = *options_.store_path;
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << store_.to_json().dump(2) << '\n';
    if (!out) throw Error(ErrorCode::UpstreamUnavailable, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void SocialNetwork::register_ubiserv(UbiServCredential credential) {
  std::unique_lock lock(mutex_);
  store_.add_ubiserv(std::move(credential));
  persist_locked();
}

UbiServToken SocialNetwork::authenticate(const std::string& ubiserv_id, const std::string& secret) {
  std::unique_lock lock(mutex_);
  const auto* cred = store_.find_ubiserv(ubiserv_id);
  if (cred == nullptr) throw Error(ErrorCode::UnknownUbiServ, ubiserv_id);
  if (cred->secret != secret) throw Error(ErrorCode::BadSecret, ubiserv_id);

  std::string value;
  do {
    value = tokens_gen_.next();
  } while (!issued_.insert(value).second);

  UbiServToken token{value, ubiserv_id, clock_->now(), options_.token_ttl_seconds};
  tokens_.emplace(value, token);
  return token;
}

void SocialNetwork::create_user(UserProfile profile) {
  std::unique_lock lock(mutex_);
  store_.upsert_profile(std::move(profile));
  persist_locked();
}

bool SocialNetwork::delete_user(const SocialUserId& user_id) {
  std::unique_lock lock(mutex_);
  bool removed = store_.remove_profile(user_id);
  if (removed) persist_locked();
  return removed;
}

void SocialNetwork::set_view_policy(const SocialUserId& user_id, ViewPolicy policy) {
  if (policy.user_id != user_id) throw Error(ErrorCode::PolicyMismatch, user_id.str());
  std::unique_lock lock(mutex_);
  store_.set_policy(std::move(policy));
  persist_locked();
}

void SocialNetwork::check_token(const std::string& token) const {
  auto it = tokens_.find(token);
  if (it == tokens_.end()) throw Error(ErrorCode::InvalidToken);
  if (clock_->now() - it->second.issued_at >= seconds(it->second.ttl_seconds)) {
    throw Error(ErrorCode::ExpiredToken, it->second.ubiserv_id);
  }
}

ServedProfile SocialNetwork::serve_ubiserv_request(const std::string& token, const SocialUserId& target) {
  std::shared_lock lock(mutex_);
  check_token(token);
  serve_count_.fetch_add(1);
  const auto* profile = store_.find_profile(target);
  if (profile == nullptr) throw Error(ErrorCode::UnknownUser, target.str());
  if (const auto* policy = store_.find_policy(target, ViewContext::UbiServEvent)) {
    return evaluate_permissions(*profile, *policy);
  }
  return evaluate_permissions(*profile, default_event_policy(target));
}

SocialUserId SocialNetwork::lookup_user_by_usnd(const std::string& token, const UsndId& usnd_id) {
  std::shared_lock lock(mutex_);
  check_token(token);
  lookup_count_.fetch_add(1);
  auto user = store_.find_user_by_usnd(usnd_id);
  if (!user) throw Error(ErrorCode::UnknownDevice, usnd_id.str());
  return *user;
}

ProfileStore SocialNetwork::snapshot() const {
  std::shared_lock lock(mutex_);
  return store_;
}

}  // namespace usn::sn

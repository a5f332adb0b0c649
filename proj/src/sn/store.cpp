#include "usn/sn/store.hpp"

#include "usn/core/error.hpp"

namespace usn::sn {

void UbiServCredential::validate() const {
  if (ubiserv_id.empty()) throw Error(ErrorCode::MalformedRequest, "ubiserv_id must be non-empty");
  if (secret.size() < kMinSecretBytes) {
    throw Error(ErrorCode::MalformedRequest, "secret must be at least 16 bytes");
  }
}

void ProfileStore::upsert_profile(UserProfile profile) {
  const auto user_id = profile.user_id();
  const auto usnd_id = profile.usnd_id();

  if (auto bound = id_index_.find(usnd_id); bound != id_index_.end() && bound->second != user_id) {
    throw Error(ErrorCode::DuplicateDevice, usnd_id.str() + " is bound to " + bound->second.str());
  }
  if (auto existing = profiles_.find(user_id); existing != profiles_.end()) {
    id_index_.erase(existing->second.usnd_id());
    existing->second = std::move(profile);
  } else {
    profiles_.emplace(user_id, std::move(profile));
  }
  id_index_.insert_or_assign(usnd_id, user_id);
}

bool ProfileStore::remove_profile(const SocialUserId& user_id) {
  auto it = profiles_.find(user_id);
  if (it == profiles_.end()) return false;
  id_index_.erase(it->second.usnd_id());
  policies_.erase({user_id, ViewContext::Public});
  policies_.erase({user_id, ViewContext::UbiServEvent});
  profiles_.erase(it);
  return true;
}

const UserProfile* ProfileStore::find_profile(const SocialUserId& user_id) const {
  auto it = profiles_.find(user_id);
  return it == profiles_.end() ? nullptr : &it->second;
}

std::optional<SocialUserId> ProfileStore::find_user_by_usnd(const UsndId& usnd_id) const {
  auto it = id_index_.find(usnd_id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<UsndId> ProfileStore::find_usnd_by_user(const SocialUserId& user_id) const {
  if (const auto* p = find_profile(user_id)) return p->usnd_id();
  return std::nullopt;
}

void ProfileStore::set_policy(ViewPolicy policy) {
  if (!profiles_.contains(policy.user_id)) throw Error(ErrorCode::UnknownUser, policy.user_id.str());
  auto key = std::make_pair(policy.user_id, policy.context);
  policies_.insert_or_assign(std::move(key), std::move(policy));
}

const ViewPolicy* ProfileStore::find_policy(const SocialUserId& user_id, ViewContext context) const {
  auto it = policies_.find({user_id, context});
  return it == policies_.end() ? nullptr : &it->second;
}

void ProfileStore::add_ubiserv(UbiServCredential credential) {
  credential.validate();
  if (ubiservs_.contains(credential.ubiserv_id)) throw Error(ErrorCode::DuplicateUbiServ, credential.ubiserv_id);
  auto id = credential.ubiserv_id;
  ubiservs_.emplace(std::move(id), std::move(credential));
}

const UbiServCredential* ProfileStore::find_ubiserv(const std::string& ubiserv_id) const {
  auto it = ubiservs_.find(ubiserv_id);
  return it == ubiservs_.end() ? nullptr : &it->second;
}

std::vector<SocialUserId> ProfileStore::user_ids() const {
  std::vector<SocialUserId> out;
  out.reserve(profiles_.size());
  for (const auto& [id, _] : profiles_) out.push_back(id);
  return out;
}

bool ProfileStore::check_invariants() const {
  if (id_index_.size() != profiles_.size()) return false;
  for (const auto& [user_id, profile] : profiles_) {
    if (profile.user_id() != user_id) return false;
    auto it = id_index_.find(profile.usnd_id());
    if (it == id_index_.end() || it->second != user_id) return false;
  }
  for (const auto& [usnd_id, user_id] : id_index_) {
    const auto* p = find_profile(user_id);
    if (p == nullptr || p->usnd_id() != usnd_id) return false;
  }
  for (const auto& [key, policy] : policies_) {
    if (!profiles_.contains(key.first) || policy.user_id != key.first || policy.context != key.second) return false;
  }
  return true;
}

nlohmann::json ProfileStore::to_json() const {
  auto profiles = nlohmann::json::array();
  for (const auto& [_, p] : profiles_) profiles.push_back(usn::to_json(p));
  auto policies = nlohmann::json::array();
  for (const auto& [_, v] : policies_) policies.push_back(usn::to_json(v));
  auto ubiservs = nlohmann::json::array();
  for (const auto& [_, c] : ubiservs_) ubiservs.push_back({{"ubiserv_id", c.ubiserv_id}, {"secret", c.secret}});
  return {{"schema", 1}, {"profiles", profiles}, {"policies", policies}, {"ubiservs", ubiservs}};
}

ProfileStore ProfileStore::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedRequest, "store must be a JSON object");
  ProfileStore store;
  try {
    for (const auto& p : j.value("profiles", nlohmann::json::array())) store.upsert_profile(user_profile_from_json(p));
    for (const auto& v : j.value("policies", nlohmann::json::array())) store.set_policy(view_policy_from_json(v));
    for (const auto& c : j.value("ubiservs", nlohmann::json::array())) {
      store.add_ubiserv({c.at("ubiserv_id").get<std::string>(), c.at("secret").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRequest, e.what());
  }
  return store;
}

}  // namespace usn::sn

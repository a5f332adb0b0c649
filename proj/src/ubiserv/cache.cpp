#include "usn/ubiserv/cache.hpp"

namespace usn::ubiserv {
namespace {

template <class Map, class Key>
auto fresh(Map& map, const Key& key, Duration now, Duration ttl) -> std::optional<decltype(map.begin()->second.value)> {
  auto it = map.find(key);
  if (it == map.end()) return std::nullopt;
  if (now - it->second.fetched_at >= ttl) {
    map.erase(it);
    return std::nullopt;
  }
  return it->second.value;
}

}  // namespace

std::optional<ServedProfile> ProfileCache::profile(const SocialUserId& user, Duration now) {
  std::lock_guard lock(mutex_);
  return fresh(profiles_, user, now, ttl_);
}

void ProfileCache::store_profile(ServedProfile profile, Duration now) {
  std::lock_guard lock(mutex_);
  auto key = profile.user_id;
  profiles_.insert_or_assign(std::move(key), Entry<ServedProfile>{std::move(profile), now});
}

std::optional<SocialUserId> ProfileCache::binding(const UsndId& usnd_id, Duration now) {
  std::lock_guard lock(mutex_);
  return fresh(bindings_, usnd_id, now, ttl_);
}

void ProfileCache::store_binding(const UsndId& usnd_id, SocialUserId user, Duration now) {
  std::lock_guard lock(mutex_);
  bindings_.insert_or_assign(usnd_id, Entry<SocialUserId>{std::move(user), now});
}

void ProfileCache::clear() {
  std::lock_guard lock(mutex_);
  profiles_.clear();
  bindings_.clear();
}

}  // namespace usn::ubiserv

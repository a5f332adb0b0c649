#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>

#include "usn/core/clock.hpp"
#include "usn/core/profile.hpp"

namespace usn::ubiserv {

/// TTL cache for profiles and device-to-user bindings fetched from the
/// social network. An entry fetched at t is served while now < t + ttl.
/// Internally synchronized.
class ProfileCache {
 public:
  explicit ProfileCache(Duration ttl) : ttl_(ttl) {}

  std::optional<ServedProfile> profile(const SocialUserId& user, Duration now);
  void store_profile(ServedProfile profile, Duration now);

  std::optional<SocialUserId> binding(const UsndId& usnd_id, Duration now);
  void store_binding(const UsndId& usnd_id, SocialUserId user, Duration now);

  void clear();
  Duration ttl() const noexcept { return ttl_; }

 private:
  template <class V>
  struct Entry {
    V value;
    Duration fetched_at;
  };

  Duration ttl_;
  std::mutex mutex_;
  std::unordered_map<SocialUserId, Entry<ServedProfile>> profiles_;
  std::unordered_map<UsndId, Entry<SocialUserId>> bindings_;
};

}  // namespace usn::ubiserv

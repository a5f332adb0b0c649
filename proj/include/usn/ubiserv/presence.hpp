#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>

#include "usn/core/clock.hpp"
#include "usn/core/ids.hpp"

namespace usn::ubiserv {

struct Session {
  std::string session_token;
  UsndId usnd_id;
  std::string area_id;
  Duration registered_at{};
  Duration last_seen{};
  bool service_enabled = true;
};

/// Active sessions of one service area, indexed by token and by device.
/// Not synchronized. The two indexes agree after every public call.
class PresenceRegistry {
 public:
  /// Installs a fresh session for the device, revoking any previous one.
  const Session& add(Session session);
  /// Returns false when the token is unknown.
  bool remove(const std::string& session_token);

  Session* find(const std::string& session_token);
  const Session* find(const std::string& session_token) const;
  const Session* find_by_usnd(const UsndId& usnd_id) const;

  /// Drops sessions idle for at least `timeout`. Returns how many went.
  std::size_t purge_idle(Duration now, Duration timeout);

  std::size_t size() const noexcept { return sessions_.size(); }
  bool consistent() const;

 private:
  std::unordered_map<std::string, Session> sessions_;
  std::unordered_map<UsndId, std::string> by_usnd_;
};

}  // namespace usn::ubiserv

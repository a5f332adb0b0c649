#include "usn/ubiserv/presence.hpp"

#include <vector>

namespace usn::ubiserv {

const Session& PresenceRegistry::add(Session session) {
  if (auto prev = by_usnd_.find(session.usnd_id); prev != by_usnd_.end()) {
    sessions_.erase(prev->second);
    by_usnd_.erase(prev);
  }
  auto token = session.session_token;
  by_usnd_.emplace(session.usnd_id, token);
  return sessions_.insert_or_assign(std::move(token), std::move(session)).first->second;
}

bool PresenceRegistry::remove(const std::string& session_token) {
  auto it = sessions_.find(session_token);
  if (it == sessions_.end()) return false;
  by_usnd_.erase(it->second.usnd_id);
  sessions_.erase(it);
  return true;
}

Session* PresenceRegistry::find(const std::string& session_token) {
  auto it = sessions_.find(session_token);
  return it == sessions_.end() ? nullptr : &it->second;
}

const Session* PresenceRegistry::find(const std::string& session_token) const {
  auto it = sessions_.find(session_token);
  return it == sessions_.end() ? nullptr : &it->second;
}

const Session* PresenceRegistry::find_by_usnd(const UsndId& usnd_id) const {
  auto it = by_usnd_.find(usnd_id);
  return it == by_usnd_.end() ? nullptr : find(it->second);
}

std::size_t PresenceRegistry::purge_idle(Duration now, Duration timeout) {
  std::vector<std::string> stale;
  for (const auto& [token, s] : sessions_) {
    if (now - s.last_seen >= timeout) stale.push_back(token);
  }
  for (const auto& token : stale) remove(token);
  return stale.size();
}

bool PresenceRegistry::consistent() const {
  if (sessions_.size() != by_usnd_.size()) return false;
  for (const auto& [usnd, token] : by_usnd_) {
    auto it = sessions_.find(token);
    if (it == sessions_.end() || it->second.usnd_id != usnd || it->second.session_token != token) return false;
  }
  return true;
}

}  // namespace usn::ubiserv

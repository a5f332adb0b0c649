#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "usn/core/ids.hpp"
#include "usn/core/profile.hpp"

namespace usn::sn {

struct UbiServCredential {
  static constexpr std::size_t kMinSecretBytes = 16;

  std::string ubiserv_id;
  std::string secret;

  /// Throws Error{MalformedRequest}.
  void validate() const;

  friend bool operator==(const UbiServCredential&, const UbiServCredential&) = default;
};

/// The social network's state. Not synchronized; SocialNetwork owns locking.
///
/// Invariants: `id_index_` is a bijection between the stored profiles'
/// usnd_ids and their user_ids, and every policy references a stored profile.
class ProfileStore {
 public:
  /// Inserts or replaces the profile for its user_id. Throws DuplicateDevice
  /// when the profile's usnd_id is already bound to a different user.
  void upsert_profile(UserProfile profile);
  /// Removes the profile together with its policies. Returns false if absent.
  bool remove_profile(const SocialUserId& user_id);

  const UserProfile* find_profile(const SocialUserId& user_id) const;
  std::optional<SocialUserId> find_user_by_usnd(const UsndId& usnd_id) const;
  std::optional<UsndId> find_usnd_by_user(const SocialUserId& user_id) const;

  /// Throws UnknownUser.
  void set_policy(ViewPolicy policy);
  const ViewPolicy* find_policy(const SocialUserId& user_id, ViewContext context) const;

  /// Throws DuplicateUbiServ.
  void add_ubiserv(UbiServCredential credential);
  const UbiServCredential* find_ubiserv(const std::string& ubiserv_id) const;

  std::size_t profile_count() const noexcept { return profiles_.size(); }
  std::vector<SocialUserId> user_ids() const;

  /// Verifies both directions of the id bijection and policy references.
  bool check_invariants() const;

  nlohmann::json to_json() const;
  /// Throws Error{MalformedRequest} / MalformedId / DuplicateDevice.
  static ProfileStore from_json(const nlohmann::json& j);

  friend bool operator==(const ProfileStore&, const ProfileStore&) = default;

 private:
  std::map<SocialUserId, UserProfile> profiles_;
  std::map<std::pair<SocialUserId, ViewContext>, ViewPolicy> policies_;
  std::map<UsndId, SocialUserId> id_index_;
  std::map<std::string, UbiServCredential> ubiservs_;
};

}  // namespace usn::sn

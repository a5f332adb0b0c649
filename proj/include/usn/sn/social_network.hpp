#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "usn/core/clock.hpp"
#include "usn/core/token.hpp"
#include "usn/sn/store.hpp"

namespace usn::sn {

struct UbiServToken {
  std::string token;
  std::string ubiserv_id;
  Duration issued_at{};
  std::int64_t ttl_seconds = 0;
};

struct SocialNetworkOptions {
  std::int64_t token_ttl_seconds = 3600;
  /// When set, the store is loaded from here at startup and rewritten
  /// atomically after every mutation.
  std::optional<std::filesystem::path> store_path;
  std::optional<std::uint64_t> token_seed;
};

/// Mock online social network with UbiServ registration, per-UbiServ
/// profile views, and UbiServ-authenticated profile serving.
///
/// Thread-safe: one writer at a time, concurrent readers. Readers see a
/// consistent profile/policy pair.
class SocialNetwork {
 public:
  explicit SocialNetwork(std::shared_ptr<const Clock> clock, SocialNetworkOptions options = {});

  void register_ubiserv(UbiServCredential credential);
  /// Throws UnknownUbiServ, BadSecret.
  UbiServToken authenticate(const std::string& ubiserv_id, const std::string& secret);

  /// Inserts or replaces a profile. Throws DuplicateDevice.
  void create_user(UserProfile profile);
  bool delete_user(const SocialUserId& user_id);
  /// Throws UnknownUser, PolicyMismatch.
  void set_view_policy(const SocialUserId& user_id, ViewPolicy policy);

  /// Users without a UbiServEvent policy are served their Name only.
  /// Throws InvalidToken, ExpiredToken, UnknownUser.
  ServedProfile serve_ubiserv_request(const std::string& token, const SocialUserId& target);
  /// Throws InvalidToken, ExpiredToken, UnknownDevice.
  SocialUserId lookup_user_by_usnd(const std::string& token, const UsndId& usnd_id);

  ProfileStore snapshot() const;
  std::int64_t token_ttl_seconds() const noexcept { return options_.token_ttl_seconds; }

  // Upstream call counters, for cache tests.
  std::uint64_t serve_count() const noexcept { return serve_count_.load(); }
  std::uint64_t lookup_count() const noexcept { return lookup_count_.load(); }

 private:
  void check_token(const std::string& token) const;
  void persist_locked() const;

  std::shared_ptr<const Clock> clock_;
  SocialNetworkOptions options_;
  TokenGenerator tokens_gen_;

  mutable std::shared_mutex mutex_;
  ProfileStore store_;
  std::unordered_map<std::string, UbiServToken> tokens_;
  std::unordered_set<std::string> issued_;

  std::atomic<std::uint64_t> serve_count_{0};
  std::atomic<std::uint64_t> lookup_count_{0};
};

/// Default view for a user who never set a UbiServEvent policy.
ViewPolicy default_event_policy(const SocialUserId& user_id);

}  // namespace usn::sn

#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "usn/device/display.hpp"
#include "usn/device/endpoints.hpp"

namespace usn::device {

struct DeviceState {
  UsndId usnd_id;
  std::optional<SessionGrant> session;
  std::optional<DisplayRecord> last_display;
};

/// USND emulator. Every profile view is a fresh UbiServ request; errors from
/// UbiServ or the world are rethrown with their original codes.
class Device {
 public:
  explicit Device(UsndId usnd_id) : state_{std::move(usnd_id), std::nullopt, std::nullopt} {}
  /// Throws MalformedId.
  explicit Device(std::string_view raw_id) : Device(UsndId::parse(raw_id)) {}

  /// Registers with UbiServ. On failure the previous state is kept.
  const DeviceState& attach(std::shared_ptr<UbiServEndpoint> ubiserv, std::shared_ptr<WorldEndpoint> world);
  /// Deregisters. Throws NotAttached.
  void detach();

  /// Throws NotAttached, then world errors.
  std::vector<UsndId> scan();
  /// Resolves the pointed-at device and requests its profile.
  DisplayRecord point_and_request();
  /// Requests a specific device's profile, e.g. one picked from scan().
  DisplayRecord request(const UsndId& target);
  /// Opt out of (or back into) being queried at this event.
  void set_service_enabled(bool enabled);

  const DeviceState& state() const noexcept { return state_; }
  const UsndId& usnd_id() const noexcept { return state_.usnd_id; }
  bool attached() const noexcept { return state_.session.has_value(); }

 private:
  const SessionGrant& session() const;

  DeviceState state_;
  std::shared_ptr<UbiServEndpoint> ubiserv_;
  std::shared_ptr<WorldEndpoint> world_;
};

}  // namespace usn::device

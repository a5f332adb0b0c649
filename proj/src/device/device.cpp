#include "usn/device/device.hpp"

#include "usn/core/error.hpp"

namespace usn::device {

const DeviceState& Device::attach(std::shared_ptr<UbiServEndpoint> ubiserv, std::shared_ptr<WorldEndpoint> world) {
  auto grant = ubiserv->register_usnd(state_.usnd_id);
  ubiserv_ = std::move(ubiserv);
  world_ = std::move(world);
  state_.session = std::move(grant);
  return state_;
}

const SessionGrant& Device::session() const {
  if (!state_.session) throw Error(ErrorCode::NotAttached, state_.usnd_id.str());
  return *state_.session;
}

void Device::detach() {
  const auto& token = session().session_token;
  ubiserv_->deregister(token);
  state_.session.reset();
}

std::vector<UsndId> Device::scan() {
  session();
  return world_->neighbors(state_.usnd_id);
}

DisplayRecord Device::point_and_request() {
  session();
  return request(world_->resolve_pointing(state_.usnd_id));
}

DisplayRecord Device::request(const UsndId& target) {
  const auto& token = session().session_token;
  auto served = ubiserv_->request_profile(token, target);
  auto record = render(served);
  state_.last_display = record;
  return record;
}

void Device::set_service_enabled(bool enabled) {
  const auto& token = session().session_token;
  ubiserv_->set_service_enabled(token, enabled);
}

}  // namespace usn::device

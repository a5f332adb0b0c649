#include "usn/net/http_service.hpp"

#include <spdlog/spdlog.h>

namespace usn::net {

int http_status_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedId:
    case ErrorCode::MalformedRequest:
    case ErrorCode::PolicyMismatch:
    case ErrorCode::WrongContext:
    case ErrorCode::OutOfBounds:
      return 400;
    case ErrorCode::BadSecret:
    case ErrorCode::InvalidToken:
    case ErrorCode::ExpiredToken:
    case ErrorCode::UnknownSession:
      return 401;
    case ErrorCode::TargetNotPresent:
    case ErrorCode::ServiceDisabled:
      return 403;
    case ErrorCode::UnknownUbiServ:
    case ErrorCode::UnknownUser:
    case ErrorCode::UnknownDevice:
    case ErrorCode::NoTarget:
      return 404;
    case ErrorCode::DuplicateUbiServ:
    case ErrorCode::DuplicateDevice:
      return 409;
    case ErrorCode::UpstreamUnavailable:
      return 502;
    default:
      return 500;
  }
}

void write_json(httplib::Response& res, const nlohmann::json& body, int status) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void write_error(httplib::Response& res, ErrorCode code) {
  write_json(res, {{"error", std::string(to_string(code))}}, http_status_for(code));
}

nlohmann::json parse_body(const httplib::Request& req) {
  auto body = nlohmann::json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) throw Error(ErrorCode::MalformedRequest, "body is not a JSON object");
  return body;
}

std::string require_header(const httplib::Request& req, const char* name, ErrorCode missing) {
  if (!req.has_header(name)) throw Error(missing, std::string("missing header ") + name);
  return req.get_header_value(name);
}

std::string require_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) throw Error(ErrorCode::MalformedRequest, std::string("missing parameter ") + name);
  return req.get_param_value(name);
}

HttpService::HttpService() {
  // SO_REUSEADDR only; a second bind to a busy port must fail.
  server_.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  // Browser clients live on another origin.
  server_.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                               {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                               {"Access-Control-Allow-Headers", "Content-Type, X-Session-Token, X-UbiServ-Token"}});
  server_.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  host_ = host;
  if (port == 0) {
    port_ = server_.bind_to_any_port(host);
    if (port_ < 0) throw Error(ErrorCode::PortInUse, "no free port on " + host);
  } else {
    if (!server_.bind_to_port(host, port)) throw Error(ErrorCode::PortInUse, host + ":" + std::to_string(port));
    port_ = port;
  }
  return port_;
}

void HttpService::start() {
  thread_ = std::thread([this] { server_.listen_after_bind(); });
  server_.wait_until_ready();
}

void HttpService::listen_blocking() { server_.listen_after_bind(); }

void HttpService::stop() {
  server_.stop();
  if (thread_.joinable()) thread_.join();
}

std::string HttpService::base_url() const { return "http://" + host_ + ":" + std::to_string(port_); }

}  // namespace usn::net

#pragma once

#include <memory>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "usn/core/error.hpp"

namespace usn::net {

int http_status_for(ErrorCode code) noexcept;

void write_json(httplib::Response& res, const nlohmann::json& body, int status = 200);
void write_error(httplib::Response& res, ErrorCode code);

/// Parses the request body as a JSON object; throws Error{MalformedRequest}.
nlohmann::json parse_body(const httplib::Request& req);
std::string require_header(const httplib::Request& req, const char* name, ErrorCode missing);
std::string require_param(const httplib::Request& req, const char* name);

/// Runs `handler` and turns any exception into an `{"error": CODE}` reply.
template <class Handler>
httplib::Server::Handler guard(Handler handler) {
  return [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      write_error(res, e.code());
    } catch (const nlohmann::json::exception&) {
      write_error(res, ErrorCode::MalformedRequest);
    }
  };
}

/// Owns an httplib server bound to one port. Subclasses register routes in
/// their constructor via `server()`.
class HttpService {
 public:
  HttpService();
  virtual ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds to `port` (0 picks a free port). Throws Error{PortInUse}.
  int bind(const std::string& host, int port);
  /// Serves on a background thread until stop().
  void start();
  /// Serves on the calling thread until stop() is called from elsewhere.
  void listen_blocking();
  void stop();

  int port() const noexcept { return port_; }
  std::string base_url() const;

 protected:
  httplib::Server& server() { return server_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  std::string host_ = "127.0.0.1";
  int port_ = -1;
};

}  // namespace usn::net

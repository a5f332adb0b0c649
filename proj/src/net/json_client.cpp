#include "usn/net/json_client.hpp"

#include <mutex>

#include <httplib.h>

namespace usn::net {

struct JsonClient::Impl {
  explicit Impl(const std::string& url) : client(url) {
    client.set_connection_timeout(2, 0);
    client.set_read_timeout(10, 0);
  }
  // httplib::Client is not safe for concurrent use on one instance.
  std::mutex mutex;
  httplib::Client client;
};

namespace {

httplib::Headers to_headers(const Headers& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

nlohmann::json decode(const httplib::Result& result, ErrorCode unreachable, const std::string& what) {
  if (!result) throw Error(unreachable, what + ": " + httplib::to_string(result.error()));
  auto body = nlohmann::json::parse(result->body, nullptr, false);
  if (body.is_discarded()) throw Error(unreachable, what + ": non-JSON reply (status " + std::to_string(result->status) + ")");
  if (body.is_object() && body.contains("error")) {
    auto name = body["error"].is_string() ? body["error"].get<std::string>() : std::string{};
    auto code = error_code_from_string(name);
    throw Error(code.value_or(ErrorCode::MalformedRequest), what);
  }
  return body;
}

}  // namespace

JsonClient::JsonClient(const std::string& base_url, ErrorCode unreachable)
    : impl_(std::make_unique<Impl>(base_url)), base_url_(base_url), unreachable_(unreachable) {}

JsonClient::~JsonClient() = default;
JsonClient::JsonClient(JsonClient&&) noexcept = default;
JsonClient& JsonClient::operator=(JsonClient&&) noexcept = default;

nlohmann::json JsonClient::get(const std::string& path, const Headers& headers) const {
  std::lock_guard lock(impl_->mutex);
  return decode(impl_->client.Get(path, to_headers(headers)), unreachable_, "GET " + path);
}

nlohmann::json JsonClient::post(const std::string& path, const nlohmann::json& body, const Headers& headers) const {
  std::lock_guard lock(impl_->mutex);
  return decode(impl_->client.Post(path, to_headers(headers), body.dump(), "application/json"), unreachable_,
                "POST " + path);
}

nlohmann::json JsonClient::put(const std::string& path, const nlohmann::json& body, const Headers& headers) const {
  std::lock_guard lock(impl_->mutex);
  return decode(impl_->client.Put(path, to_headers(headers), body.dump(), "application/json"), unreachable_,
                "PUT " + path);
}

std::string url_encode(const std::string& value) { return httplib::detail::encode_query_param(value); }

}  // namespace usn::net

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "usn/core/error.hpp"

namespace usn::net {

using Headers = std::vector<std::pair<std::string, std::string>>;

/// Blocking JSON-over-HTTP client. Replies of the form `{"error": CODE}` are
/// rethrown as Error{CODE} verbatim; transport failures become Error{unreachable}.
class JsonClient {
 public:
  JsonClient(const std::string& base_url, ErrorCode unreachable);
  ~JsonClient();
  JsonClient(JsonClient&&) noexcept;
  JsonClient& operator=(JsonClient&&) noexcept;

  nlohmann::json get(const std::string& path, const Headers& headers = {}) const;
  nlohmann::json post(const std::string& path, const nlohmann::json& body, const Headers& headers = {}) const;
  nlohmann::json put(const std::string& path, const nlohmann::json& body, const Headers& headers = {}) const;

  const std::string& base_url() const noexcept { return base_url_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string base_url_;
  ErrorCode unreachable_;
};

/// Percent-encodes a query parameter value.
std::string url_encode(const std::string& value);

}  // namespace usn::net

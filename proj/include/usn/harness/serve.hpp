#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace usn::harness {

/// Social network service configuration:
/// `{host?, port?, token_ttl_seconds?, store_path?}`.
struct SnServiceConfig {
  std::string host = "127.0.0.1";
  int port = 0;
  std::int64_t token_ttl_seconds = 3600;
  std::string store_path;

  static SnServiceConfig from_json(const nlohmann::json& j);
};

/// Reads a JSON config file. Throws Error{ConfigError}.
nlohmann::json load_config(const std::filesystem::path& path);

/// Runs `sn`, `ubiserv` or `world` until SIGINT/SIGTERM. Prints
/// `READY <component> <port>` on `out` once listening. Throws ConfigError
/// or PortInUse.
void serve_component(const std::string& component, const std::filesystem::path& config_path, std::ostream& out);

}  // namespace usn::harness

#include "usn/harness/logging.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace usn::harness {

void configure_logging_from_env() {
  auto logger = spdlog::stderr_color_mt("usn");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("USN_LOG");
  std::string_view level = env ? env : "info";
  spdlog::set_level(level == "debug" ? spdlog::level::debug : spdlog::level::info);
}

}  // namespace usn::harness

#include "usn/harness/serve.hpp"

#include <csignal>
#include <fstream>
#include <memory>
#include <ostream>
#include <thread>

#include <pthread.h>
#include <spdlog/spdlog.h>

#include "usn/core/error.hpp"
#include "usn/sn/http_server.hpp"
#include "usn/ubiserv/http_server.hpp"
#include "usn/world/http_server.hpp"

namespace usn::harness {
namespace {

// Blocks SIGINT/SIGTERM in every thread, serves on a worker, and stops the
// service once one of the signals arrives.
void run_until_signal(net::HttpService& service, const std::string& component, std::ostream& out) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  std::thread worker([&] { service.listen_blocking(); });
  out << "READY " << component << ' ' << service.port() << std::endl;
  spdlog::info("{} listening on {}", component, service.base_url());

  int sig = 0;
  sigwait(&set, &sig);
  spdlog::info("{}: signal {}, shutting down", component, sig);
  service.stop();
  worker.join();
}

}  // namespace

SnServiceConfig SnServiceConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "sn config must be a JSON object");
  SnServiceConfig c;
  try {
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.token_ttl_seconds = j.value("token_ttl_seconds", c.token_ttl_seconds);
    c.store_path = j.value("store_path", c.store_path);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("sn config: ") + e.what());
  }
  if (c.token_ttl_seconds <= 0) throw Error(ErrorCode::ConfigError, "token_ttl_seconds must be > 0");
  return c;
}

nlohmann::json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ConfigError, path.string() + " is not valid JSON");
  return j;
}

void serve_component(const std::string& component, const std::filesystem::path& config_path, std::ostream& out) {
  const auto j = load_config(config_path);
  auto clock = std::make_shared<SteadyClock>();

  if (component == "sn") {
    auto cfg = SnServiceConfig::from_json(j);
    sn::SocialNetworkOptions opts;
    opts.token_ttl_seconds = cfg.token_ttl_seconds;
    if (!cfg.store_path.empty()) opts.store_path = cfg.store_path;
    sn::SocialNetwork network(clock, opts);
    sn::SnHttpServer server(network);
    server.bind(cfg.host, cfg.port);
    run_until_signal(server, component, out);
  } else if (component == "ubiserv") {
    auto cfg = ubiserv::UbiServConfig::from_json(j);
    auto link = std::make_shared<ubiserv::HttpSocialNetworkApi>(cfg.sn_base_url);
    ubiserv::UbiServ node(cfg, link, clock);
    ubiserv::UbiServHttpServer server(node);
    server.bind(cfg.host, cfg.port);
    run_until_signal(server, component, out);
  } else if (component == "world") {
    auto cfg = world::WorldServiceConfig::from_json(j);
    world::World floor(cfg.area, cfg.params);
    world::WorldHttpServer server(floor);
    server.bind(cfg.host, cfg.port);
    run_until_signal(server, component, out);
  } else {
    throw Error(ErrorCode::ConfigError, "unknown component '" + component + "'");
  }
}

}  // namespace usn::harness

// usn: boots services, seeds fixtures, and runs scenario scripts.
//
// Exit codes: 0 pass, 1 assertion failure, 2 config error, 3 environment error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "usn/core/error.hpp"
#include "usn/harness/engine.hpp"
#include "usn/harness/fixtures.hpp"
#include "usn/harness/logging.hpp"
#include "usn/harness/serve.hpp"
#include "usn/net/json_client.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;
constexpr int kExitEnvironment = 3;

int exit_code_for(usn::ErrorCode code) {
  using usn::ErrorCode;
  switch (code) {
    case ErrorCode::AssertionFailure:
      return kExitAssertion;
    case ErrorCode::ConfigError:
    case ErrorCode::ScriptParseError:
    case ErrorCode::FixtureParseError:
    case ErrorCode::MalformedId:
    case ErrorCode::MalformedRequest:
      return kExitConfig;
    default:
      return kExitEnvironment;
  }
}

}  // namespace

int main(int argc, char** argv) {
  usn::harness::configure_logging_from_env();

  CLI::App app{"Ubiquitous social network stack: services, seeding and scenario runner"};
  app.require_subcommand(1);

  std::string component;
  std::string config_path;
  auto* serve = app.add_subcommand("serve", "Run one service until interrupted");
  serve->add_option("component", component, "sn | ubiserv | world")
      ->required()
      ->check(CLI::IsMember({"sn", "ubiserv", "world"}));
  serve->add_option("--config", config_path, "JSON config file")->required();

  std::string sn_url;
  std::string fixture_path;
  auto* seed = app.add_subcommand("seed", "Load a fixture file into a running social network");
  seed->add_option("--sn", sn_url, "Social network base URL")->required();
  seed->add_option("--fixtures", fixture_path, "Fixture JSON file")->required();

  std::string scenario_path;
  std::string transcript_path;
  std::optional<std::uint64_t> seed_override;
  bool loopback = false;
  auto* run = app.add_subcommand("run", "Execute a scenario script");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--transcript", transcript_path, "Write the JSON-lines transcript here");
  run->add_option("--seed", seed_override, "Override the script's seed");
  run->add_flag("--loopback", loopback, "Run every service over loopback TCP");

  std::string world_url;
  auto* dump = app.add_subcommand("world-dump", "Print a world snapshot");
  dump->add_option("--world", world_url, "World service base URL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*serve) {
      usn::harness::serve_component(component, config_path, std::cout);
      return kExitPass;
    }
    if (*seed) {
      std::cout << usn::harness::seed_fixtures(sn_url, fixture_path) << std::endl;
      return kExitPass;
    }
    if (*run) {
      usn::harness::RunOptions options;
      options.seed = seed_override;
      options.transport = loopback ? usn::harness::Transport::Loopback : usn::harness::Transport::InProcess;
      auto transcript = usn::harness::run_scenario_file(scenario_path, options);
      if (!transcript_path.empty()) transcript.write(transcript_path);
      else std::cout << transcript.to_jsonl();
      for (const auto& a : transcript.assertions) {
        if (!a.pass) std::cerr << "FAIL " << a.step << " (ref " << a.ref << "): " << a.detail << '\n';
      }
      return transcript.passed() ? kExitPass : kExitAssertion;
    }
    if (*dump) {
      usn::net::JsonClient client(world_url, usn::ErrorCode::WorldUnreachable);
      std::cout << client.get("/world").dump(2) << std::endl;
      return kExitPass;
    }
  } catch (const usn::Error& e) {
    std::cerr << "usn: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitConfig;
}

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "usn/net/http_service.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string usn_bin() {
  const char* bin = std::getenv("USN_BIN");
  return bin ? bin : USN_BIN_DEFAULT;
}

fs::path source_dir() {
  const char* root = std::getenv("USN_SOURCE_DIR");
  return root ? root : USN_SOURCE_DIR_DEFAULT;
}

/// A child process with its stdout on a pipe.
class Child {
 public:
  explicit Child(std::vector<std::string> args) {
    int fds[2];
    if (pipe(fds) != 0) throw std::runtime_error("pipe");
    pid_ = fork();
    if (pid_ == 0) {
      dup2(fds[1], STDOUT_FILENO);
      close(fds[0]);
      close(fds[1]);
      std::vector<char*> argv;
      for (auto& a : args) argv.push_back(a.data());
      argv.push_back(nullptr);
      execv(argv[0], argv.data());
      _exit(127);
    }
    close(fds[1]);
    out_ = fdopen(fds[0], "r");
  }
  ~Child() {
    if (pid_ > 0 && !reaped_) {
      kill(pid_, SIGKILL);
      wait();
    }
    if (out_) fclose(out_);
  }

  std::string read_line() {
    char buf[512];
    if (!fgets(buf, sizeof buf, out_)) return {};
    std::string s(buf);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  }

  int wait() {
    int status = 0;
    waitpid(pid_, &status, 0);
    reaped_ = true;
    return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  }
  void signal(int sig) { kill(pid_, sig); }

 private:
  pid_t pid_ = -1;
  FILE* out_ = nullptr;
  bool reaped_ = false;
};

int run(std::vector<std::string> args) {
  Child c(std::move(args));
  while (!c.read_line().empty()) {
  }
  return c.wait();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("usn-cli-" + std::to_string(::getpid()) + "-" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path write(const std::string& name, const std::string& text) {
    auto p = dir / name;
    std::ofstream(p) << text;
    return p;
  }

  static int port_of(const std::string& ready, const std::string& component) {
    std::istringstream in(ready);
    std::string word, comp;
    int port = -1;
    in >> word >> comp >> port;
    EXPECT_EQ(word, "READY");
    EXPECT_EQ(comp, component);
    return port;
  }

  fs::path dir;
};

TEST_F(Cli, ServePrintsReadyLineAndStopsOnSignal) {
  auto cfg = write("sn.json", R"({"port": 0})");
  Child sn({usn_bin(), "serve", "sn", "--config", cfg.string()});
  const int port = port_of(sn.read_line(), "sn");
  EXPECT_GT(port, 0);
  sn.signal(SIGTERM);
  EXPECT_EQ(sn.wait(), 0);
}

TEST_F(Cli, ServeUbiServAndWorld) {
  auto ubi = write("u.json", R"({"area_id":"hall","name":"Hall","bounds":{"min_x":0,"min_y":0,"max_x":10,"max_y":10},
    "sn_base_url":"http://127.0.0.1:1","ubiserv_id":"u","secret":"0123456789abcdef","port":0})");
  auto world = write("w.json", R"({"area_id":"hall","name":"Hall","bounds":{"min_x":0,"min_y":0,"max_x":10,"max_y":10},"port":0})");
  Child u({usn_bin(), "serve", "ubiserv", "--config", ubi.string()});
  Child w({usn_bin(), "serve", "world", "--config", world.string()});
  EXPECT_GT(port_of(u.read_line(), "ubiserv"), 0);
  const int wport = port_of(w.read_line(), "world");
  Child dump({usn_bin(), "world-dump", "--world", "http://127.0.0.1:" + std::to_string(wport)});
  std::string text;
  for (std::string line; !(line = dump.read_line()).empty();) text += line;
  EXPECT_EQ(dump.wait(), 0);
  auto snap = json::parse(text);
  EXPECT_EQ(snap["tick"], 0);
  EXPECT_EQ(snap["area"]["area_id"], "hall");
  u.signal(SIGINT);
  w.signal(SIGINT);
  EXPECT_EQ(u.wait(), 0);
  EXPECT_EQ(w.wait(), 0);
}

TEST_F(Cli, BadConfigExitsTwo) {
  EXPECT_EQ(run({usn_bin(), "serve", "sn", "--config", write("a.json", "{ nope").string()}), 2);
  EXPECT_EQ(run({usn_bin(), "serve", "sn", "--config", (dir / "missing.json").string()}), 2);
  EXPECT_EQ(run({usn_bin(), "serve", "sn", "--config", write("b.json", R"({"token_ttl_seconds": 0})").string()}), 2);
  EXPECT_EQ(run({usn_bin(), "serve", "world", "--config", write("c.json", R"({"area_id":"x"})").string()}), 2);
  EXPECT_EQ(run({usn_bin(), "serve", "ubiserv", "--config", write("d.json", "[]").string()}), 2);
  EXPECT_EQ(run({usn_bin(), "bogus-command"}), 2);
}

TEST_F(Cli, PortConflictExitsThree) {
  usn::net::HttpService holder;
  const int port = holder.bind("127.0.0.1", 0);
  auto cfg = write("sn.json", R"({"port": )" + std::to_string(port) + "}");
  EXPECT_EQ(run({usn_bin(), "serve", "sn", "--config", cfg.string()}), 3);
}

TEST_F(Cli, RunExitCodesAndTranscript) {
  auto scenarios = source_dir() / "scenarios";
  auto out = dir / "conference.jsonl";
  EXPECT_EQ(run({usn_bin(), "run", (scenarios / "conference.json").string(), "--transcript", out.string()}), 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(json::parse(header)["scenario"], "conference");

  EXPECT_EQ(run({usn_bin(), "run", (scenarios / "party.json").string(), "--loopback", "--transcript",
                 (dir / "party.jsonl").string()}),
            0);

  std::ifstream src(scenarios / "conference.json");
  auto j = json::parse(src);
  j["fixtures"] = (scenarios / "fixtures" / "conference.json").string();
  for (auto& step : j["steps"]) {
    if (step.value("id", "") == "expert_display") step["expect"]["fields"] = json::array({"name"});
  }
  auto failing = write("failing.json", j.dump());
  auto failing_out = dir / "failing.jsonl";
  EXPECT_EQ(run({usn_bin(), "run", failing.string(), "--transcript", failing_out.string()}), 1);
  ASSERT_TRUE(fs::exists(failing_out));
  std::ifstream fin(failing_out);
  std::string last, line;
  while (std::getline(fin, line)) last = line;
  EXPECT_EQ(json::parse(last)["verdict"], "fail");

  EXPECT_EQ(run({usn_bin(), "run", write("broken.json", R"({"schema": 1})").string()}), 2);
  EXPECT_EQ(run({usn_bin(), "run", (dir / "absent.json").string()}), 2);
}

TEST_F(Cli, RunIsByteIdenticalAcrossInvocations) {
  auto scenario = (source_dir() / "scenarios" / "jobfair.json").string();
  auto a = dir / "a.jsonl", b = dir / "b.jsonl";
  ASSERT_EQ(run({usn_bin(), "run", scenario, "--transcript", a.string(), "--seed", "99"}), 0);
  ASSERT_EQ(run({usn_bin(), "run", scenario, "--transcript", b.string(), "--seed", "99"}), 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a).find("\"seed\":99"), std::string::npos);
}

TEST_F(Cli, SeedIsIdempotent) {
  auto store = dir / "store.json";
  auto cfg = write("sn.json", json({{"port", 0}, {"store_path", store.string()}}).dump());
  Child sn({usn_bin(), "serve", "sn", "--config", cfg.string()});
  const std::string url = "http://127.0.0.1:" + std::to_string(port_of(sn.read_line(), "sn"));
  auto fixtures = (source_dir() / "scenarios" / "fixtures" / "conference.json").string();
  auto slurp = [&] {
    std::ifstream in(store, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };

  Child first({usn_bin(), "seed", "--sn", url, "--fixtures", fixtures});
  EXPECT_EQ(first.read_line(), "12");
  EXPECT_EQ(first.wait(), 0);
  const auto after_first = slurp();
  Child second({usn_bin(), "seed", "--sn", url, "--fixtures", fixtures});
  EXPECT_EQ(second.read_line(), "12");
  EXPECT_EQ(second.wait(), 0);
  EXPECT_EQ(slurp(), after_first);
  EXPECT_EQ(json::parse(after_first)["profiles"].size(), 12u);

  auto bad = write("bad.json", R"({"schema": 1, "profiles": [{"user_id": "x"}]})");
  EXPECT_EQ(run({usn_bin(), "seed", "--sn", url, "--fixtures", bad.string()}), 2);
  EXPECT_EQ(slurp(), after_first);
  sn.signal(SIGTERM);
  EXPECT_EQ(sn.wait(), 0);

  EXPECT_EQ(run({usn_bin(), "seed", "--sn", "http://127.0.0.1:1", "--fixtures", fixtures}), 3);
}

}  // namespace

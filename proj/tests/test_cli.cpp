#include <gtest/gtest.h>

#include <spawn.h>
#include <sys/wait.h>

#include <chrono>
#include <csignal>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "gdpwage/http_server.hpp"
#include "gdpwage/indicators.hpp"
#include "gdpwage/scenario_json.hpp"
#include "oracles.hpp"

extern char** environ;

using namespace gdpwage;

namespace {

const std::string kCli = GDPWAGE_CLI_PATH;
const std::string kData = GDPWAGE_DATA_DIR;

oracle::CommandResult cli(const std::string& args, bool merge_stderr = false) {
  return oracle::run_command(kCli + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null"));
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string write_temp(const oracle::TempDir& dir, const std::string& name,
                       const std::string& body) {
  const auto path = (dir.path() / name).string();
  std::ofstream(path, std::ios::binary) << body;
  return path;
}

}  // namespace

TEST(CliValidate, FixtureIsClean) {
  EXPECT_EQ(cli("validate --input " + kData + "/us_annual.csv").exit_code, 0);
}

TEST(CliValidate, ViolationsListLines) {
  oracle::TempDir dir;
  const auto path = write_temp(dir, "bad.csv",
                               std::string(kSeriesHeader) +
                                   "\n2000,1,2,,,100,,,\n2000,1,2,,,100,,,\n2001,-3,2,,,100,,,\n");
  const auto r = cli("validate --input " + path, true);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find(":3:"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(":4:"), std::string::npos) << r.out;
  EXPECT_EQ(cli("validate --input " + (dir.path() / "missing.csv").string()).exit_code, 1);
}

TEST(CliIndicators, HungaryRatios) {
  const auto r = cli("indicators --input " + kData + "/hungary.csv --series wmin");
  ASSERT_EQ(r.exit_code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"year", "w_min"}));
  EXPECT_NEAR(std::stod(rows[1][1]), 0.406, 0.005);
  EXPECT_NEAR(std::stod(rows[3][1]), 0.606, 0.005);
}

TEST(CliIndicators, RealPlateau) {
  const auto r = cli("indicators --input " + kData + "/us_annual.csv --series real --base-year 1960");
  ASSERT_EQ(r.exit_code, 0);
  const std::map<std::string, double> want = {
      {"1960", 2080}, {"1985", 2090}, {"2001", 2047}, {"2017", 2076}};
  int seen = 0;
  for (const auto& row : parse_csv(r.out)) {
    auto it = want.find(row[0]);
    if (it == want.end()) continue;
    EXPECT_NEAR(std::stod(row[1]), it->second, 50) << row[0];
    ++seen;
  }
  EXPECT_EQ(seen, 4);
}

TEST(CliIndicators, Errors) {
  EXPECT_EQ(cli("indicators --input " + kData + "/us_annual.csv --series wmin,vibes").exit_code, 2);
  EXPECT_EQ(cli("indicators --input " + kData + "/us_annual.csv --series real").exit_code, 2);
  const auto r = cli("indicators --input " + kData + "/hungary.csv --series kaitz", true);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("median_wage_hourly"), std::string::npos);
  EXPECT_EQ(cli("indicators --input " + kData + "/hungary.csv").exit_code, 2);
}

TEST(CliFigures, MinGiniAndInvalidName) {
  const auto r = cli("figures --input " + kData + "/us_annual.csv --fig min-gini");
  ASSERT_EQ(r.exit_code, 0);
  for (const auto& row : parse_csv(r.out)) EXPECT_EQ(row.size(), 3u);
  EXPECT_EQ(r.out, cli("figures --input " + kData + "/us_annual.csv --fig min-gini").out);
  const auto bad = cli("figures --input " + kData + "/us_annual.csv --fig pie", true);
  EXPECT_EQ(bad.exit_code, 2);
  for (const char* name : {"min-gdp-union", "min-mean-scatter", "min-gini"}) {
    EXPECT_NE(bad.out.find(name), std::string::npos);
  }
}

TEST(CliSimulate, HungaryEndpoints) {
  const auto r = cli("simulate --preset hungary");
  ASSERT_EQ(r.exit_code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][2], "w_min");
  EXPECT_NEAR(std::stod(rows[1][2]), 0.406, 1e-12);
  EXPECT_NEAR(std::stod(rows[3][2]), 0.606, 1e-12);
}

TEST(CliSimulate, FixedNominalDecayAndDeterminism) {
  oracle::TempDir dir;
  const auto a = (dir.path() / "a.csv").string(), b = (dir.path() / "b.csv").string();
  const auto r = cli("simulate --preset us-fixed-nominal --steps 30 --out " + a, true);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("w_min="), std::string::npos);
  ASSERT_EQ(cli("simulate --preset us-fixed-nominal --steps 30 --out " + b).exit_code, 0);
  EXPECT_EQ(oracle::read_file(a), oracle::read_file(b));
  const auto rows = parse_csv(oracle::read_file(a));
  ASSERT_EQ(rows.size(), 32u);
  EXPECT_NEAR(std::stod(rows[31][2]) / std::stod(rows[1][2]), std::pow(1.02, -30), 1e-6);
}

TEST(CliSimulate, StdoutCarriesOnlyData) {
  const auto r = cli("simulate --preset us-baseline --steps 2");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.find("final"), std::string::npos);
  EXPECT_EQ(parse_csv(r.out).size(), 4u);
}

TEST(CliSimulate, ScenarioFileMatchesPreset) {
  oracle::TempDir dir;
  const auto path = write_temp(dir, "s.json", to_json(*preset("us-baseline")).dump(2));
  const auto r = cli("simulate --scenario " + path);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, cli("simulate --preset us-baseline").out);
}

TEST(CliSimulate, Errors) {
  oracle::TempDir dir;
  json cfg = to_json(*preset("us-baseline"));
  cfg["rule"] = {{"type", "manual"}, {"schedule", json::array({nullptr, {{"floor", 1.0}}})}};
  const auto failing = write_temp(dir, "fail.json", cfg.dump());
  const auto r = cli("simulate --scenario " + failing, true);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("step 2"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("t,nominal_min"), std::string::npos);
  EXPECT_EQ(cli("simulate --scenario " + write_temp(dir, "junk.json", "{")).exit_code, 1);
  EXPECT_EQ(cli("simulate --preset atlantis").exit_code, 2);
  EXPECT_EQ(cli("simulate").exit_code, 2);
  EXPECT_EQ(cli("frobnicate").exit_code, 2);
}

TEST(CliServe, OccupiedPortExitsOne) {
  oracle::TempDir dir;
  SessionStore store(dir.path());
  HttpServer holder(store);
  ASSERT_TRUE(holder.bind("127.0.0.1", 0));
  const auto r = cli("serve --data-dir " + dir.str() + " --bind 127.0.0.1:" +
                     std::to_string(holder.port()));
  EXPECT_EQ(r.exit_code, 1);
}

TEST(CliServe, InterruptLeavesRecoverableSessions) {
  oracle::TempDir dir;
  int port = 0;
  {
    SessionStore probe_store(dir.path() / "probe");
    HttpServer probe(probe_store);
    ASSERT_TRUE(probe.bind("127.0.0.1", 0));
    port = probe.port();
  }
  const std::string bind = "127.0.0.1:" + std::to_string(port);
  const std::string data = (dir.path() / "sessions").string();
  std::vector<std::string> args = {kCli, "serve", "--bind", bind, "--data-dir", data};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  pid_t pid = 0;
  ASSERT_EQ(posix_spawn(&pid, kCli.c_str(), nullptr, nullptr, argv.data(), environ), 0);

  httplib::Client client("127.0.0.1", port);
  httplib::Result created;
  for (int i = 0; i < 100 && !created; ++i) {
    created = client.Post("/api/v1/sessions", R"({"preset":"us-baseline"})", "application/json");
    if (!created) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 201);
  const auto id = json::parse(created->body).at("id").get<std::string>();
  ASSERT_EQ(client.Get("/api/v1/sessions/" + id)->status, 200);
  ASSERT_EQ(client.Post("/api/v1/sessions/" + id + "/advance", R"({"n":4})", "application/json")
                ->status,
            200);
  const auto before = client.Get("/api/v1/sessions/" + id + "/history")->body;

  kill(pid, SIGINT);
  int status = 0;
  waitpid(pid, &status, 0);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);

  SessionStore recovered(data);
  EXPECT_EQ(recovered.history_table(id, std::nullopt).dump(), before);
}

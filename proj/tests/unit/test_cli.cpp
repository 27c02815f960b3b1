#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eur");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = eur::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, BoundAnchors) {
  CliRun r = run_cli({"bound", "--kind", "shannon-bbm", "--cell", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(",-0.38629436112,"), std::string::npos) << r.out;
  r = run_cli({"bound", "--kind", "shannon-sat", "--cell", "2"});
  EXPECT_NE(r.out.find(",0.712317927548,"), std::string::npos) << r.out;
  r = run_cli({"bound", "--kind", "tsallis-sat", "--alpha", "1.3", "--cell", "10"});
  EXPECT_NE(r.out.find(",0.289103971481,"), std::string::npos) << r.out;
}

TEST(Cli, BadAlphaIsUsageError) {
  const CliRun r = run_cli({"bound", "--alpha", "0.5", "--cell", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1/alpha + 1/beta = 2"), std::string::npos);
  EXPECT_EQ(run_cli({"bound"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"bound", "--cell", "1", "--format", "xml"}).code, 2);
}

TEST(Cli, JsonSummaryLayout) {
  const CliRun r = run_cli({"bound", "--family", "gaussian", "--cell", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"command", "config", "results", "checks"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["command"], "bound");
  EXPECT_EQ(j["results"].size(), 6u);
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["passed"].get<bool>());
}

TEST(Cli, FigureCsvHeaders) {
  CliRun r = run_cli({"figure", "--id", "1", "--resolution", "5"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "cell,shannon_bbm,renyi_bound,tsallis_orig,asymptote_plus,asymptote_minus");
  r = run_cli({"figure", "--id", "2", "--resolution", "4"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "delta_p,ratio_r,ratio_t");
  r = run_cli({"figure", "--id", "3", "--resolution", "5"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "cell,shannon_sat,renyi_overlay,tsallis_sat,asymptote_high,asymptote_low");
  EXPECT_EQ(run_cli({"figure", "--id", "4"}).code, 2);
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, FigureJsonChecks) {
  for (const char* id : {"1", "2", "3"}) {
    const CliRun r = run_cli({"figure", "--id", id, "--format", "json", "--resolution", "30"});
    ASSERT_EQ(r.code, 0);
    for (const auto& c : nlohmann::json::parse(r.out)["checks"]) {
      EXPECT_TRUE(c["passed"].get<bool>()) << id << " " << c["id"];
    }
  }
}

TEST(Cli, ByteIdenticalOutput) {
  const std::string a = tmp_path("fig3_a.csv"), b = tmp_path("fig3_b.csv");
  ASSERT_EQ(run_cli({"figure", "--id", "3", "--out", a}).code, 0);
  ASSERT_EQ(run_cli({"figure", "--id", "3", "--out", b}).code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, UnwritableOutputNamesPath) {
  const CliRun r = run_cli({"bound", "--cell", "1", "--out", "/nonexistent/dir/x.csv"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/nonexistent/dir/x.csv"), std::string::npos);
}

TEST(Cli, ConfigFileFlagsWin) {
  const std::string cfg = tmp_path("cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"cell": 10, "alpha": 1.3, "kind": "shannon-bbm"})";
  }
  CliRun r = run_cli({"bound", "--config", cfg});
  EXPECT_NE(r.out.find("shannon-bbm,1.3,0.8125,false,10,"), std::string::npos) << r.out;
  r = run_cli({"bound", "--config", cfg, "--cell", "2"});
  EXPECT_NE(r.out.find(",-0.38629436112,"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli({"bound", "--config", tmp_path("missing.json")}).code, 2);
}

TEST(Cli, Entropy) {
  const std::string prefix = tmp_path("bins");
  const CliRun r = run_cli({"entropy", "--family", "gaussian", "--dx", "1", "--dp", "1",
                         "--bins-out", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("x,r,shannon,1,1,1.458958828"), std::string::npos) << r.out;
  EXPECT_EQ(slurp(prefix + "_x.csv").substr(0, 37), "index,lower_edge,upper_edge,probabili");
  EXPECT_EQ(run_cli({"entropy", "--family", "gaussian"}).code, 2);
}

TEST(Cli, Jensen) {
  const CliRun r = run_cli({"jensen", "--resolution", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "width,ratio_r,ratio_t,taylor_estimate");
}

TEST(Cli, Saturate) {
  CliRun r = run_cli({"saturate", "--budget", "30", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["results"]["minimum"]["evaluations"].get<int>(), 30);
  r = run_cli({"saturate", "--budget", "30", "--scan-lo", "0.25", "--scan-hi", "4", "--resolution",
               "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "sigma,entropy_sum,bound,gap,status");
  EXPECT_EQ(run_cli({"saturate", "--budget", "5"}).code, 2);
}

TEST(Cli, Footnote3) {
  CliRun r = run_cli({"example-footnote3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("-0.38629436112"), std::string::npos);
  EXPECT_NE(r.out.find("0.712317927548"), std::string::npos);
  EXPECT_NE(r.out.find("1.76"), std::string::npos);
  EXPECT_NE(r.out.find("pure-state"), std::string::npos);
  EXPECT_NE(r.out.find("unit-density"), std::string::npos);
  r = run_cli({"example-footnote3", "--interpretation", "pure-state", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["interpretations"].size(), 1u);
  EXPECT_EQ(j["results"]["reference_sum"], 1.76);
}

TEST(Cli, VerifyFilterAndNegativePath) {
  CliRun r = run_cli({"verify", "--only", "eta-transformed", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["checks"].size(), 1u);
  EXPECT_EQ(j["checks"][0]["id"], "eta-transformed");
  r = run_cli({"verify", "--only", "tabulated-normalization", "--tabulated",
               std::string(EUR_TEST_DATA) + "/corrupted_table.csv"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL tabulated-normalization"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli({"verify", "--only", "no-such-check"}).code, 2);
}

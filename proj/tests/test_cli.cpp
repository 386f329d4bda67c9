#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cubebm/cli.hpp"

namespace {

struct Outcome {
  int status = -1;
  std::string out, err;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "cubebm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cubebm::cli::run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

std::size_t column(const std::string& header, const std::string& name) {
  const auto cols = split(header);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] == name) return i;
  }
  ADD_FAILURE() << "no column " << name << " in " << header;
  return 0;
}

int shell_status(const std::string& args) {
  const std::string cmd = std::string(CUBEBM_BINARY) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST(Cli, RicciHypercubeSevenIsAQuarterEverywhere) {
  const auto r = run_args({"ricci", "--n", "7"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 1 + 448 + 1u);
  const auto k = column(rows[0], "kappa");
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) ASSERT_EQ(split(rows[i])[k], "0.25");
  EXPECT_EQ(rows.back(), "# summary records=448 min_margin=0 violations=0");
}

TEST(Cli, RicciExactModeReportsFractions) {
  const auto r = run_args({"ricci", "--n", "4", "--mode", "exact"});
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  EXPECT_EQ(split(rows[1])[column(rows[0], "kappa_exact")], "2/5");
}

TEST(Cli, RicciOnAnEdgeListFile) {
  const std::string path = ::testing::TempDir() + "cycle6.txt";
  std::ofstream(path) << "# six-cycle\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
  const auto r = run_args({"ricci", "--graph", path, "--mode", "exact"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 1; i < 7; ++i) EXPECT_EQ(split(rows[i])[column(rows[0], "kappa_exact")], "0");
}

TEST(Cli, MalformedGraphNamesTheLine) {
  const std::string path = ::testing::TempDir() + "bad.txt";
  std::ofstream(path) << "0 1\n# fine\n1 2 3\n";
  const auto r = run_args({"ricci", "--graph", path});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Cli, BmSetAntipodalRow) {
  const auto r = run_args({"bm-set", "--n", "4", "--a", "0000", "--b", "1111"});
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  const auto cells = split(rows[1]);
  EXPECT_EQ(cells[column(rows[0], "size_m")], "6");
  EXPECT_NEAR(std::stod(cells[column(rows[0], "margin")]), std::log(6.0) - 0.25, 1e-11);
}

TEST(Cli, CapAndUsageErrors) {
  const auto big = run_args({"bm-set", "--n", "30"});
  EXPECT_EQ(big.status, 2);
  EXPECT_NE(big.err.find("N <= 24"), std::string::npos) << big.err;
  EXPECT_EQ(run_args({}).status, 2);
  EXPECT_EQ(run_args({"nope"}).status, 2);
  EXPECT_EQ(run_args({"bm-set"}).status, 2);
  EXPECT_EQ(run_args({"bm-set", "--n", "4", "--a", "0000"}).status, 2);
  EXPECT_EQ(run_args({"bm-set", "--a", "000", "--b", "1111"}).status, 2);
  EXPECT_EQ(run_args({"bm-set", "--n", "4", "--trials", "0"}).status, 2);
  EXPECT_EQ(run_args({"bm-set", "--n", "4", "--mode", "fast"}).status, 2);
  EXPECT_EQ(run_args({"bm-set", "--n", "4", "--densities", "0.5,2"}).status, 2);
  EXPECT_EQ(run_args({"conc-s", "--n", "8"}).status, 2);
  EXPECT_EQ(run_args({"ricci", "--n", "17"}).status, 2);
}

TEST(Cli, OverriddenCurvatureCanFail) {
  // K* for antipodal singletons at N = 4 is 8 ln 6 / 16, so K = 1 breaks the inequality.
  const auto r = run_args({"bm-set", "--a", "0000", "--b", "1111", "--k", "1"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("violations=1"), std::string::npos);
}

TEST(Cli, JsonRecordsHaveStableKeysAndASummary) {
  const auto r = run_args({"inject", "--n", "5", "--trials", "4", "--format", "json"});
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  std::vector<std::string> first_keys;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto rec = nlohmann::ordered_json::parse(rows[i]);
    std::vector<std::string> keys;
    for (const auto& [k, v] : rec.items()) keys.push_back(k);
    if (i == 0) first_keys = keys;
    EXPECT_EQ(keys, first_keys);
    EXPECT_EQ(rec["instance"], i);
  }
  EXPECT_EQ(first_keys.front(), "instance");
  const auto summary = nlohmann::json::parse(rows.back())["summary"];
  EXPECT_EQ(summary["records"], 4);
  EXPECT_EQ(summary["violations"], 0);
}

TEST(Cli, CsvUsesTwelveSignificantDigits) {
  const auto r = run_args({"bm-entropy", "--n", "4", "--trials", "3", "--seed", "9"});
  ASSERT_EQ(r.status, 0);
  const auto rows = lines(r.out);
  const auto s = split(rows[1])[column(rows[0], "s_half")];
  const auto digits = std::count_if(s.begin(), s.end(), [](char c) { return std::isdigit(c); });
  EXPECT_LE(digits, 13);  // a leading 0 before the point plus 12 significant digits
  EXPECT_EQ(s, [&] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", std::stod(s));
    return std::string(buf);
  }());
}

TEST(Cli, SameSeedSameBytes) {
  for (const char* cmd : {"bm-set", "bm-entropy", "inject", "fiber", "proof-chain", "conc-c", "conc-s"}) {
    const auto a = run_args({cmd, "--n", "5", "--trials", "3", "--seed", "77"});
    const auto b = run_args({cmd, "--n", "5", "--trials", "3", "--seed", "77"});
    ASSERT_EQ(a.status, 0) << cmd << " " << a.err;
    EXPECT_EQ(a.out, b.out) << cmd;
    const auto c = run_args({cmd, "--n", "5", "--trials", "3", "--seed", "78"});
    EXPECT_NE(a.out, c.out) << cmd;
  }
}

TEST(Cli, EverySubcommandPassesOnDefaults) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"ricci", "--n", "5"},
           {"bm-set", "--n", "8", "--densities", "0,0.3"},
           {"bm-entropy", "--n", "6", "--mode", "exact"},
           {"inject", "--n", "6"},
           {"fiber", "--n", "5"},
           {"proof-chain", "--mode", "exact"},
           {"conc-c", "--n", "7", "--mode", "exact"},
           {"conc-s", "--n", "5"},
           {"ksweep", "--n", "12"}}) {
    const auto r = run_args(args);
    EXPECT_EQ(r.status, 0) << args[0] << ": " << r.err << r.out;
    EXPECT_NE(r.out.find("violations=0"), std::string::npos) << args[0];
  }
}

TEST(Cli, BinaryExitStatuses) {
  EXPECT_EQ(shell_status("ricci --n 7"), 0);
  EXPECT_EQ(shell_status("bm-set --n 4 --a 0000 --b 1111"), 0);
  EXPECT_EQ(shell_status("bm-set --a 0000 --b 1111 --k 1"), 1);
  EXPECT_EQ(shell_status("bm-set --n 30"), 2);
  EXPECT_EQ(shell_status("ricci --graph /nonexistent/graph.txt"), 2);
  EXPECT_EQ(shell_status("--help"), 0);
}

// Copyright 2026 The phaselift-haar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "phaselift/cli/commands.hpp"

using namespace phaselift;
using namespace phaselift::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("phaselift_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "phaselift");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    log_.str("");
    err_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), log_, err_);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream log_, err_;
};

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) rows.push_back(split_line(line));
  return rows;
}

}  // namespace

TEST(Output, ShortestRoundTripDoubles) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  const double v = 2.0 * (std::sqrt(2.0) - 1.0);
  const std::string s = format_double(v);
  double back = 0;
  std::from_chars(s.data(), s.data() + s.size(), back);
  EXPECT_EQ(back, v);
}

TEST(Output, CsvAndJsonShapes) {
  Table t;
  t.columns = {"name", "value", "flag", "missing"};
  t.add_row({std::string("a,b"), 0.5, true, Cell{}});
  std::ostringstream os;
  write_csv(os, t);
  EXPECT_EQ(os.str(), "name,value,flag,missing\n\"a,b\",0.5,true,\n");
  const auto j = table_to_json(t);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_TRUE(j[0]["missing"].is_null());
  EXPECT_EQ(j[0].begin().key(), "name");  // column order preserved
  EXPECT_THROW(t.add_row({1.0}), DimensionError);
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig cfg;
  cfg.command = Command::Rip;
  cfg.n = {16, 64};
  cfg.r = {3};
  cfg.r_max = 5;
  cfg.lambda = {0.0, 0.41421356237309515};
  cfg.field = Field::Real;
  cfg.seed = 18446744073709551557ull;
  cfg.out = "x.csv";
  cfg.format = Format::Json;
  cfg.tol = 3e-9;
  const ExperimentConfig back = config_from_json(nlohmann::json::parse(to_json(cfg).dump()));
  EXPECT_EQ(to_json(back), to_json(cfg));
  EXPECT_EQ(back.seed, cfg.seed);
  EXPECT_EQ(back.lambda[1], cfg.lambda[1]);
  EXPECT_EQ(back.r_values(), (std::vector<std::size_t>{3, 4, 5}));
}

TEST(Config, ValidationRejectsBadValues) {
  ExperimentConfig cfg;
  cfg.out = "x";
  cfg.validate();
  auto bad = [&](auto mutate) {
    ExperimentConfig c = cfg;
    mutate(c);
    EXPECT_THROW(c.validate(), InvalidArgument);
  };
  bad([](auto& c) { c.trials = 0; });
  bad([](auto& c) { c.n.clear(); });
  bad([](auto& c) { c.r.clear(); });
  bad([](auto& c) { c.r = {0}; });
  bad([](auto& c) { c.r_max = 3; });  // below r = 8
  bad([](auto& c) { c.lambda = {1.5}; });
  bad([](auto& c) { c.tol = 0; });
  bad([](auto& c) { c.out.clear(); });
  bad([](auto& c) {
    c.command = Command::Certificate;
    c.field = Field::Real;
  });
  bad([](auto& c) {
    c.command = Command::Rip;
    c.delta = 0.5;
  });
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"recover", "--trials", "0", "--out", path("a.csv")}), 1);
  EXPECT_EQ(run({"recover", "--field", "quaternion", "--out", path("a.csv")}), 1);
  EXPECT_EQ(run({"bogus"}), 1);
  EXPECT_EQ(run({"recover"}), 1);  // --out is required
  EXPECT_EQ(run({"recover", "--trials", "1", "--n", "4", "--r", "4", "--out", path("no/such/dir/a.csv")}), 2);
  EXPECT_EQ(run({"--manifest", path("missing.json")}), 2);
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_FALSE(fs::exists(path("a.csv")));
}

TEST_F(CliTest, RecoverWritesRowsAndManifest) {
  ASSERT_EQ(run({"recover", "--n", "8", "--r", "6", "--trials", "3", "--out", path("rec.csv")}), 0) << err_.str();
  const auto rows = read_csv(slurp(path("rec.csv")));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][0], "n");
  EXPECT_EQ(rows[0][8], "rel_error_lifted");
  EXPECT_EQ(rows[1][12], "true");

  const auto m = nlohmann::json::parse(slurp(path("rec.csv.manifest.json")));
  EXPECT_EQ(m["config"]["command"], "recover");
  EXPECT_EQ(m["streams"].size(), 3u);
  EXPECT_EQ(m["summary"]["success_rate"], 1.0);
  EXPECT_TRUE(m.contains("duration_seconds"));
  EXPECT_EQ(m["version"], kVersion);
}

TEST_F(CliTest, SameSeedIsByteIdenticalAcrossThreadCounts) {
  const std::vector<std::string> base{"recover", "--n", "8", "--r", "6", "--trials", "4", "--seed", "77"};
  auto a = base, b = base;
  a.insert(a.end(), {"--threads", "1", "--out", path("a.csv")});
  b.insert(b.end(), {"--threads", "3", "--out", path("b.csv")});
  ASSERT_EQ(run(a), 0);
  ASSERT_EQ(run(b), 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, ManifestReplayReproducesOutput) {
  ASSERT_EQ(run({"rip", "--n", "16", "--r", "2", "--trials", "20", "--lambda", "0,0.5", "--format", "json",
                 "--out", path("rip.json")}),
            0);
  ASSERT_EQ(run({"--manifest", path("rip.json.manifest.json"), "--out", path("rip2.json")}), 0) << err_.str();
  EXPECT_EQ(slurp(path("rip.json")), slurp(path("rip2.json")));
  const auto m = nlohmann::json::parse(slurp(path("rip2.json.manifest.json")));
  EXPECT_EQ(m["config"]["format"], "json");
  EXPECT_EQ(m["streams"].size(), 40u);
}

TEST_F(CliTest, PhaseDiagramColumnsAndTrend) {
  ASSERT_EQ(run({"phase-diagram", "--n", "6", "--r", "1", "--r-max", "5", "--trials", "6", "--out", path("pd.csv")}),
            0);
  const auto rows = read_csv(slurp(path("pd.csv")));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "r", "m", "trials", "successes", "success_rate"}));
  const double low = std::stod(rows[1][5]), high = std::stod(rows[5][5]);
  EXPECT_LE(low, high);
  EXPECT_EQ(high, 1.0);
}

TEST_F(CliTest, MomentsReportsClosedForm) {
  ASSERT_EQ(run({"moments", "--n", "4", "--max-d", "2", "--rows", "20000", "--out", path("m.csv")}), 0);
  const auto rows = read_csv(slurp(path("m.csv")));
  bool found = false;
  for (const auto& r : rows) found |= r[0] == "moment" && r[1] == "4" && r[2] == "2" && r[4] == "0.1";
  EXPECT_TRUE(found);
  const auto m = nlohmann::json::parse(slurp(path("m.csv.manifest.json")));
  EXPECT_TRUE(m["summary"]["consistency"][0]["holds_exactly"].get<bool>());
}

TEST_F(CliTest, RipMinimumNearClosedForm) {
  ASSERT_EQ(run({"rip", "--n", "32", "--r", "4", "--trials", "60", "--out", path("rip.csv")}), 0);
  const auto rows = read_csv(slurp(path("rip.csv")));
  ASSERT_EQ(rows.size(), 6u);
  double best = 10.0;
  for (std::size_t i = 1; i < rows.size(); ++i) best = std::min(best, std::stod(rows[i][4]));
  EXPECT_NEAR(best, 0.8284, 0.02);
}

TEST_F(CliTest, RipRealFieldHasNoClosedForm) {
  ASSERT_EQ(run({"rip", "--n", "8", "--r", "1", "--trials", "5", "--field", "real", "--out", path("r.csv")}), 0);
  const auto rows = read_csv(slurp(path("r.csv")));
  EXPECT_EQ(rows[1][6], "");
}

TEST_F(CliTest, CertificateSchema) {
  ASSERT_EQ(run({"certificate", "--n", "64", "--r", "50", "--trials", "2", "--out", path("c.csv")}), 0);
  const auto rows = read_csv(slurp(path("c.csv")));
  ASSERT_EQ(rows.size(), 2u);
  ASSERT_EQ(rows[0][5], "pass_yt_fraction");
  for (int c : {5, 6, 7}) {
    const double v = std::stod(rows[1][c]);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST_F(CliTest, CertificateCalibrationRecordsLadder) {
  ASSERT_EQ(run({"certificate", "--n", "16", "--r", "8", "--r-max", "64", "--calibrate", "--pilot-trials", "2",
                 "--target", "0.5", "--trials", "2", "--out", path("c.csv")}),
            0)
      << err_.str();
  const auto m = nlohmann::json::parse(slurp(path("c.csv.manifest.json")));
  const auto& cal = m["summary"]["calibration"][0];
  EXPECT_EQ(cal["steps"][0]["r"], 8);
  EXPECT_TRUE(cal.contains("chosen_r"));
}

TEST_F(CliTest, InjectivityTable) {
  ASSERT_EQ(run({"injectivity", "--n", "6", "--r", "1,3", "--trials", "500", "--out", path("i.csv")}), 0);
  const auto rows = read_csv(slurp(path("i.csv")));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(std::stod(rows[2][3]), 0.0);
}

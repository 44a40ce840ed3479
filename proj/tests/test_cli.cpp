// Copyright 2026 The sfinfo Authors
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

#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "sfinfo/cli.hpp"
#include "sfinfo/error.hpp"
#include "sfinfo/matrix_io.hpp"
#include "sfinfo/report.hpp"
#include "temp_dir.hpp"

namespace sfinfo {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;
using testing::read_file;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Value of `key=<v>` in the estimate output line.
double field(const std::string& line, const std::string& key) {
  const auto pos = line.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(line.substr(pos + key.size() + 1));
}

std::vector<std::string> sorted_names(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) {
    names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

TEST_CASE("simulate writes run CSVs, the aggregate and both SVGs") {
  TempDir dir("cli_sim");
  const fs::path out = dir / "r";
  const auto r = cli({"simulate", "--sim", "1", "--reps", "10", "--seed", "42",
                      "--out", out.string() + "/"});
  REQUIRE(r.code == kExitOk);
  std::vector<std::string> expected;
  for (int rep = 0; rep < 10; ++rep) expected.push_back(run_csv_name(1, rep));
  expected.push_back(aggregate_csv_name(1));
  expected.push_back(information_plane_svg_name(1));
  expected.push_back(dynamics_svg_name(1));
  std::sort(expected.begin(), expected.end());
  CHECK(sorted_names(out) == expected);
}

TEST_CASE("simulate all writes one subdirectory per simulation") {
  TempDir dir("cli_all");
  const fs::path out = dir / "r";
  const auto r = cli({"simulate", "--sim", "all", "--reps", "10", "--seed",
                      "42", "--out", out.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(sorted_names(out) ==
        std::vector<std::string>{"sim_1", "sim_2", "sim_3", "sim_4"});
  for (int sim = 1; sim <= 4; ++sim) {
    const fs::path sub = out / ("sim_" + std::to_string(sim));
    CHECK(sorted_names(sub).size() == 13);
    CHECK(fs::exists(sub / aggregate_csv_name(sim)));
  }
}

TEST_CASE("invalid simulation id names the valid range") {
  const auto r = cli({"simulate", "--sim", "9"});
  CHECK(r.code == kExitUserError);
  CHECK(r.err.find("1-4") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK_THROWS_AS(parse_sim_selector("0"), ConfigError);
  CHECK_THROWS_AS(parse_sim_selector("1x"), ConfigError);
  CHECK(parse_sim_selector("all") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_sim_selector("3") == std::vector<int>{3});
}

TEST_CASE("malformed invocations exit nonzero with usage") {
  TempDir dir("cli_bad");
  const std::vector<std::vector<std::string>> cases = {
      {},
      {"bogus"},
      {"simulate", "--reps", "abc"},
      {"simulate", "--reps", "0", "--out", (dir / "a").string()},
      {"simulate", "--bins", "1", "--out", (dir / "b").string()},
      {"simulate", "--optimizer", "adam", "--out", (dir / "c").string()},
      {"simulate", "--eval-split", "dev", "--out", (dir / "d").string()},
      {"simulate", "--jobs", "0", "--out", (dir / "e").string()},
      {"simulate", "--unknown-flag"},
      {"simulate", "--sim"},
      {"estimate", "--x", "only.csv"},
      {"estimate", "--x", "a.csv", "--t", "b.csv", "--t-range", "wide"},
      {"train", "--features", "2"},
      {"train", "--data", "x.csv", "--features", "two", "--out", "o"},
      {"dump", "--sim", "5", "--out", (dir / "x.csv").string()},
      {"dump", "--split", "val", "--out", (dir / "x.csv").string()},
      {"transform", "--weights", "w.csv"},
  };
  for (const auto& args : cases) {
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    CAPTURE(joined);
    CliResult r;
    CHECK_NOTHROW(r = cli(args));
    CHECK(r.code == kExitUserError);
    CHECK(r.err.find("Usage") != std::string::npos);
  }
  // Nothing was created by the rejected simulate calls.
  CHECK(sorted_names(dir.path()).empty());
}

TEST_CASE("help exits zero") {
  const auto r = cli({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("simulate") != std::string::npos);
  CHECK(cli({"simulate", "--help"}).code == kExitOk);
}

TEST_CASE("unwritable output directory is a nonzero exit") {
  TempDir dir("cli_unwritable");
  std::ofstream(dir / "file") << "x\n";
  const auto r = cli({"simulate", "--reps", "1", "--max-iterations", "2",
                      "--out", (dir / "file" / "sub").string()});
  CHECK(r.code != kExitOk);
  CHECK(r.err.find("file") != std::string::npos);
}

TEST_CASE("config file plus flags equals the fully flagged invocation") {
  TempDir dir("cli_config");
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << R"({
    "sim": "2", "repetitions": 5, "base_seed": 3, "bin_count": 20,
    "optimizer": {"method": "lbfgs", "max_iterations": 15}
  })";
  const auto a = cli({"simulate", "--config", cfg.string(), "--reps", "2",
                      "--seed", "11", "--out", (dir / "a").string()});
  const auto b = cli({"simulate", "--sim", "2", "--reps", "2", "--seed", "11",
                      "--bins", "20", "--optimizer", "lbfgs",
                      "--max-iterations", "15", "--out", (dir / "b").string()});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  const auto names = sorted_names(dir / "a");
  REQUIRE(names == sorted_names(dir / "b"));
  CHECK(names.size() == 5);  // 2 runs, aggregate, 2 SVGs
  for (const auto& n : names) {
    CAPTURE(n);
    CHECK(read_file(dir / "a" / n) == read_file(dir / "b" / n));
  }
}

TEST_CASE("config merge resolves to the same settings as flags") {
  CliConfig from_json = apply_config_json(R"({
    "sim": "all", "repetitions": 4, "base_seed": 9, "bin_count": 12,
    "epsilon": 1e-6, "eval_split": "train", "out_dir": "x", "jobs": 2,
    "optimizer": {"method": "gd", "max_iterations": 7, "gradient_tolerance": 1e-4,
                  "relative_objective_tolerance": 0, "memory": 5,
                  "step_size": 0.05, "wolfe_c1": 0.001, "wolfe_c2": 0.5}
  })");
  CliConfig manual;
  manual.sims = {1, 2, 3, 4};
  manual.simulation.repetitions = 4;
  manual.simulation.base_seed = 9;
  manual.simulation.bin_count = 12;
  manual.simulation.epsilon = 1e-6;
  manual.simulation.eval_split = EvalSplit::kTrain;
  manual.simulation.optimizer.method = OptimizerMethod::kGradientDescent;
  manual.simulation.optimizer.max_iterations = 7;
  manual.simulation.optimizer.gradient_tolerance = 1e-4;
  manual.simulation.optimizer.relative_objective_tolerance = 0;
  manual.simulation.optimizer.memory = 5;
  manual.simulation.optimizer.step_size = 0.05;
  manual.simulation.optimizer.wolfe_c1 = 0.001;
  manual.simulation.optimizer.wolfe_c2 = 0.5;
  manual.out_dir = "x";
  manual.jobs = 2;
  CHECK(from_json == manual);
  CHECK(apply_config_json("{}") == CliConfig{});
  CHECK(apply_config_json(R"({"sim": 3})").sims == std::vector<int>{3});
}

TEST_CASE("config errors are rejected before any work") {
  CHECK_THROWS_AS(apply_config_json(R"({"repetitons": 3})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(R"({"optimizer": {"lr": 1}})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(R"({"repetitions": "three"})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(R"({"repetitions": 2.5})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(R"([1, 2])"), ConfigError);
  CHECK_THROWS_AS(apply_config_json("{not json"), ConfigError);

  TempDir dir("cli_config_bad");
  std::ofstream(dir / "c.json") << R"({"bogus": true})";
  const auto r = cli({"simulate", "--config", (dir / "c.json").string(),
                      "--out", (dir / "o").string()});
  CHECK(r.code == kExitUserError);
  CHECK(r.err.find("bogus") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "o"));
  CHECK(cli({"simulate", "--config", (dir / "missing.json").string()}).code ==
        kExitUserError);
}

TEST_CASE("estimate on identical variables reports mi equal to entropy") {
  TempDir dir("cli_est");
  Matrix x(2, 6);
  x << 0.0, 0.2, 0.4, 0.6, 0.8, 1.0,
       1.0, 0.5, 0.1, 0.9, 0.3, 0.7;
  write_samples_csv(dir / "x.csv", x);
  for (const char* range : {"unit", "data"}) {
    const auto r = cli({"estimate", "--x", (dir / "x.csv").string(), "--t",
                        (dir / "x.csv").string(), "--bins", "50",
                        "--t-range", range});
    REQUIRE(r.code == kExitOk);
    CHECK(field(r.out, "mi_xt_bits") == field(r.out, "entropy_t_bits"));
    CHECK(field(r.out, "entropy_t_bits") == doctest::Approx(std::log2(6.0)));
  }
}

TEST_CASE("estimate with a constant representation prints zero information") {
  TempDir dir("cli_const");
  Matrix x(1, 5);
  x << 1, 2, 3, 4, 5;
  Matrix t = Matrix::Constant(1, 5, 0.5);
  write_samples_csv(dir / "x.csv", x);
  write_samples_csv(dir / "t.csv", t);
  const auto r = cli({"estimate", "--x", (dir / "x.csv").string(), "--t",
                      (dir / "t.csv").string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("mi_xt_bits=0 ", 0) == 0);
  CHECK(field(r.out, "entropy_t_bits") == 0.0);
  CHECK(field(r.out, "kl_uniform_bits") == doctest::Approx(std::log2(30.0)));
}

TEST_CASE("estimate rejects mismatched or malformed inputs") {
  TempDir dir("cli_est_bad");
  write_samples_csv(dir / "x.csv", Matrix::Ones(1, 5));
  write_samples_csv(dir / "t.csv", Matrix::Ones(1, 4));
  std::ofstream(dir / "bad.csv") << "dim_0\n1\nnot-a-number\n";
  CHECK(cli({"estimate", "--x", (dir / "x.csv").string(), "--t",
             (dir / "t.csv").string()}).code == kExitUserError);
  CHECK(cli({"estimate", "--x", (dir / "x.csv").string(), "--t",
             (dir / "bad.csv").string()}).code == kExitUserError);
  CHECK(cli({"estimate", "--x", (dir / "x.csv").string(), "--t",
             (dir / "none.csv").string()}).code != kExitOk);
}

TEST_CASE("dump, train, transform and estimate reproduce the harness record") {
  TempDir dir("cli_cross");
  const auto d = [&](const char* name) { return (dir / name).string(); };
  REQUIRE(cli({"dump", "--sim", "1", "--seed", "42", "--rep", "0", "--split",
               "train", "--out", d("train.csv")}).code == kExitOk);
  REQUIRE(cli({"dump", "--sim", "1", "--seed", "42", "--rep", "0", "--split",
               "test", "--out", d("test.csv")}).code == kExitOk);
  // The train seed is the run seed, so weights start where the harness does.
  const RngSeed seed = run_seed(42, 1, 0);
  REQUIRE(cli({"train", "--data", d("train.csv"), "--features", "2", "--seed",
               std::to_string(seed.value), "--out", d("model")}).code == kExitOk);
  REQUIRE(cli({"transform", "--weights", d("model/weights.csv"), "--data",
               d("test.csv"), "--out", d("t.csv")}).code == kExitOk);
  const auto r = cli({"estimate", "--x", d("test.csv"), "--t", d("t.csv")});
  REQUIRE(r.code == kExitOk);

  const RunTrajectory run = run_single(SimulationConfig{}, 0);
  CHECK(read_rows_csv(dir / "model" / "weights.csv") == run.final_weights);
  CHECK(std::abs(field(r.out, "mi_xt_bits") - run.records.back().mi_xt) < 1e-12);
  CHECK(std::abs(field(r.out, "entropy_t_bits") - run.records.back().entropy_t) <
        1e-12);
}

TEST_CASE("train writes a k by d weight matrix deterministically") {
  TempDir dir("cli_train");
  const auto d = [&](const std::string& name) { return (dir / name).string(); };
  REQUIRE(cli({"dump", "--sim", "1", "--split", "train", "--out",
               d("data.csv")}).code == kExitOk);
  for (const char* out : {"m1", "m2"}) {
    REQUIRE(cli({"train", "--data", d("data.csv"), "--features", "2", "--seed",
                 "5", "--out", d(out)}).code == kExitOk);
  }
  const Matrix w = read_rows_csv(dir / "m1" / "weights.csv");
  CHECK(w.rows() == 2);
  CHECK(w.cols() == 2);
  CHECK(read_file(dir / "m1" / "weights.csv") == read_file(dir / "m2" / "weights.csv"));
  CHECK(read_file(dir / "m1" / "trajectory.csv") ==
        read_file(dir / "m2" / "trajectory.csv"));
  CHECK(sorted_names(dir / "m1") ==
        std::vector<std::string>{"trajectory.csv", "weights.csv"});

  const auto zero = cli({"train", "--data", d("data.csv"), "--features", "0",
                         "--out", d("m3")});
  CHECK(zero.code == kExitUserError);
  CHECK_FALSE(fs::exists(dir / "m3"));
}

TEST_CASE("transform rejects weights of the wrong width") {
  TempDir dir("cli_tf");
  write_rows_csv(dir / "w.csv", Matrix::Ones(2, 3));
  write_samples_csv(dir / "x.csv", Matrix::Ones(2, 4));
  CHECK(cli({"transform", "--weights", (dir / "w.csv").string(), "--data",
             (dir / "x.csv").string(), "--out", (dir / "t.csv").string()})
            .code == kExitUserError);
}

}  // namespace
}  // namespace sfinfo

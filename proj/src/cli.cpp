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

#include "sfinfo/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sfinfo/datagen.hpp"
#include "sfinfo/error.hpp"
#include "sfinfo/info_theory.hpp"
#include "sfinfo/matrix_io.hpp"
#include "sfinfo/report.hpp"

namespace sfinfo {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return get_as<int>(j, key);
}

double get_real(const json& j, const std::string& key) {
  if (!j.is_number()) {
    throw ConfigError("config key '" + key + "' must be a number");
  }
  return get_as<double>(j, key);
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) {
    throw ConfigError("config key '" + key + "' must be a string");
  }
  return get_as<std::string>(j, key);
}

OptimizerMethod method_from(const std::string& name) {
  auto m = parse_optimizer_method(name);
  if (!m) {
    throw ConfigError("unknown optimizer '" + name + "'; expected lbfgs or gd");
  }
  return *m;
}

EvalSplit split_from(const std::string& name) {
  auto s = parse_eval_split(name);
  if (!s) {
    throw ConfigError("unknown eval split '" + name + "'; expected test or train");
  }
  return *s;
}

void apply_optimizer_json(const json& j, OptimizerConfig& opt) {
  if (!j.is_object()) throw ConfigError("config key 'optimizer' must be an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = "optimizer." + key;
    if (key == "method") {
      opt.method = method_from(get_string(value, path));
    } else if (key == "max_iterations") {
      opt.max_iterations = get_int(value, path);
    } else if (key == "gradient_tolerance") {
      opt.gradient_tolerance = get_real(value, path);
    } else if (key == "relative_objective_tolerance") {
      opt.relative_objective_tolerance = get_real(value, path);
    } else if (key == "memory") {
      opt.memory = get_int(value, path);
    } else if (key == "step_size") {
      opt.step_size = get_real(value, path);
    } else if (key == "wolfe_c1") {
      opt.wolfe_c1 = get_real(value, path);
    } else if (key == "wolfe_c2") {
      opt.wolfe_c2 = get_real(value, path);
    } else {
      throw ConfigError("unknown config key '" + path + "'");
    }
  }
}

void write_simulation(const SimulationConfig& sim, const fs::path& dir,
                      int jobs, std::ostream& err) {
  const auto runs = run_batch(sim, jobs);
  const auto agg = aggregate(runs);
  export_csv(runs, agg, dir);
  render_information_plane(agg, dir / information_plane_svg_name(sim.sim_id));
  render_dynamics_panels(runs, dir / dynamics_svg_name(sim.sim_id));
  err << "simulation " << sim.sim_id << ": " << runs.size()
      << " runs, aggregate length " << agg.length << " -> " << dir.string()
      << '\n';
}

struct SimulateFlags {
  std::string config_file;
  std::string sim;
  int reps = 0;
  std::uint64_t seed = 0;
  int bins = 0;
  std::string optimizer;
  std::string out;
  int jobs = 0;
  int max_iterations = 0;
  std::string eval_split;
};

int cmd_simulate(const SimulateFlags& flags, const CLI::App& cmd,
                 std::ostream& err) {
  CliConfig cfg;
  if (!flags.config_file.empty()) {
    std::ifstream in(flags.config_file);
    if (!in) throw ConfigError("cannot read config file " + flags.config_file);
    std::stringstream text;
    text << in.rdbuf();
    cfg = apply_config_json(text.str(), cfg);
  }
  if (cmd.count("--sim")) cfg.sims = parse_sim_selector(flags.sim);
  if (cmd.count("--reps")) cfg.simulation.repetitions = flags.reps;
  if (cmd.count("--seed")) cfg.simulation.base_seed = flags.seed;
  if (cmd.count("--bins")) cfg.simulation.bin_count = flags.bins;
  if (cmd.count("--optimizer")) {
    cfg.simulation.optimizer.method = method_from(flags.optimizer);
  }
  if (cmd.count("--out")) cfg.out_dir = flags.out;
  if (cmd.count("--jobs")) cfg.jobs = flags.jobs;
  if (cmd.count("--max-iterations")) {
    cfg.simulation.optimizer.max_iterations = flags.max_iterations;
  }
  if (cmd.count("--eval-split")) {
    cfg.simulation.eval_split = split_from(flags.eval_split);
  }
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");

  // Validate everything before any work starts.
  for (int id : cfg.sims) {
    SimulationConfig sim = cfg.simulation;
    sim.sim_id = id;
    sim.validate();
  }

  const fs::path root(cfg.out_dir);
  for (int id : cfg.sims) {
    SimulationConfig sim = cfg.simulation;
    sim.sim_id = id;
    const fs::path dir =
        cfg.sims.size() > 1 ? root / ("sim_" + std::to_string(id)) : root;
    write_simulation(sim, dir, cfg.jobs, err);
  }
  return kExitOk;
}

struct EstimateFlags {
  std::string x_file;
  std::string t_file;
  int bins = kDefaultBinCount;
  std::string t_range = "unit";
};

int cmd_estimate(const EstimateFlags& flags, std::ostream& out) {
  if (flags.t_range != "unit" && flags.t_range != "data") {
    throw ConfigError("--t-range must be unit or data");
  }
  const DataMatrix x = read_samples_csv(flags.x_file);
  const DataMatrix t = read_samples_csv(flags.t_file);
  if (x.cols() != t.cols()) {
    throw DimensionError("sample counts differ: x has " +
                         std::to_string(x.cols()) + ", t has " +
                         std::to_string(t.cols()));
  }
  const BinnedMatrix xb = discretize(x, make_bin_spec(x, flags.bins));
  std::optional<std::pair<double, double>> t_range;
  if (flags.t_range == "unit") t_range = std::pair{0.0, 1.0};
  const BinnedMatrix tb = discretize(t, make_bin_spec(t, flags.bins, t_range));

  const double mi = mutual_information(joint_counts(xb, tb));
  const double h = entropy(empirical_distribution(tb));
  const FdlTerms terms =
      fdl_objective_terms(xb, tb, flags.bins, static_cast<int>(t.rows()));
  out << "mi_xt_bits=" << format_real(mi) << " entropy_t_bits="
      << format_real(h) << " kl_uniform_bits="
      << format_real(terms.kl_uniform_term) << '\n';
  return kExitOk;
}

struct TrainFlags {
  std::string data_file;
  int features = 0;
  std::string optimizer = "lbfgs";
  std::string out;
  std::uint64_t seed = 42;
  int bins = kDefaultBinCount;
  int max_iterations = 200;
};

int cmd_train(const TrainFlags& flags, std::ostream& err) {
  if (flags.features < 1) {
    throw ConfigError("--features must be >= 1, got " +
                      std::to_string(flags.features));
  }
  OptimizerConfig opt;
  opt.method = method_from(flags.optimizer);
  opt.max_iterations = flags.max_iterations;
  opt.validate();
  if (flags.bins < 2) throw ConfigError("--bins must be >= 2");
  const DataMatrix x = read_samples_csv(flags.data_file);

  RunTrajectory run =
      train_tracked(x, x, flags.features, weight_seed(RngSeed{flags.seed}),
                    flags.bins, kDefaultSoftAbsEpsilon, opt);
  const fs::path dir(flags.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory", dir.string());
  }
  write_rows_csv(dir / "weights.csv", run.final_weights);

  AggregateTrajectory agg = aggregate({run});
  // export_csv writes run_0_0.csv and aggregate_0.csv; keep only the run.
  const auto files = export_csv({run}, agg, dir);
  fs::rename(files.front(), dir / "trajectory.csv");
  fs::remove(files.back());
  err << "trained " << flags.features << " features in "
      << run.records.size() - 1 << " iterations ("
      << to_string(run.termination) << ")\n";
  return kExitOk;
}

struct DumpFlags {
  int sim = 1;
  std::uint64_t seed = 42;
  int rep = 0;
  std::string split = "test";
  std::string out;
};

int cmd_dump(const DumpFlags& flags) {
  const EvalSplit split = split_from(flags.split);
  if (flags.rep < 0) throw ConfigError("--rep must be >= 0");
  parse_sim_selector(std::to_string(flags.sim));
  const SimulationData data = make_simulation_data(
      flags.sim, data_seed(run_seed(flags.seed, flags.sim, flags.rep)));
  write_samples_csv(flags.out, split == EvalSplit::kTest ? data.dataset.test
                                                         : data.dataset.train);
  return kExitOk;
}

struct TransformFlags {
  std::string weights_file;
  std::string data_file;
  std::string out;
  double epsilon = kDefaultSoftAbsEpsilon;
};

int cmd_transform(const TransformFlags& flags) {
  const WeightMatrix w = read_rows_csv(flags.weights_file);
  const DataMatrix x = read_samples_csv(flags.data_file);
  write_samples_csv(flags.out, sf_forward(w, x, flags.epsilon));
  return kExitOk;
}

}  // namespace

std::vector<int> parse_sim_selector(const std::string& text) {
  if (text == "all") return {1, 2, 3, 4};
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '4') {
    return {text[0] - '0'};
  }
  throw ConfigError("invalid simulation id '" + text +
                    "': valid range is 1-4 or 'all'");
}

CliConfig apply_config_json(const std::string& json_text, CliConfig base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "sim") {
      base.sims = parse_sim_selector(
          value.is_number_integer() ? std::to_string(value.get<long long>())
                                    : get_string(value, key));
    } else if (key == "repetitions") {
      base.simulation.repetitions = get_int(value, key);
    } else if (key == "base_seed") {
      if (!value.is_number_unsigned()) {
        throw ConfigError("config key 'base_seed' must be a nonnegative integer");
      }
      base.simulation.base_seed = get_as<std::uint64_t>(value, key);
    } else if (key == "bin_count") {
      base.simulation.bin_count = get_int(value, key);
    } else if (key == "epsilon") {
      base.simulation.epsilon = get_real(value, key);
    } else if (key == "eval_split") {
      base.simulation.eval_split = split_from(get_string(value, key));
    } else if (key == "optimizer") {
      apply_optimizer_json(value, base.simulation.optimizer);
    } else if (key == "out_dir") {
      base.out_dir = get_string(value, key);
    } else if (key == "jobs") {
      base.jobs = get_int(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return base;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Sparse filtering with information-plane instrumentation",
               "sfinfo"};
  app.require_subcommand(1);

  SimulateFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "Run simulation batches");
  simulate->add_option("--sim", sim_flags.sim, "Simulation id 1-4 or 'all'");
  simulate->add_option("--reps", sim_flags.reps, "Repetitions per simulation");
  simulate->add_option("--seed", sim_flags.seed, "Base seed");
  simulate->add_option("--bins", sim_flags.bins, "Bins per dimension");
  simulate->add_option("--optimizer", sim_flags.optimizer, "lbfgs or gd");
  simulate->add_option("--out", sim_flags.out, "Output directory");
  simulate->add_option("--config", sim_flags.config_file, "JSON config file");
  simulate->add_option("--jobs", sim_flags.jobs, "Concurrent repetitions");
  simulate->add_option("--max-iterations", sim_flags.max_iterations,
                       "Optimizer iteration budget");
  simulate->add_option("--eval-split", sim_flags.eval_split,
                       "Split used for statistics: test or train");

  EstimateFlags est_flags;
  auto* estimate = app.add_subcommand("estimate", "Estimate I[X;T] and H[T]");
  estimate->add_option("--x", est_flags.x_file, "Input samples CSV")->required();
  estimate->add_option("--t", est_flags.t_file, "Representation CSV")->required();
  estimate->add_option("--bins", est_flags.bins, "Bins per dimension");
  estimate->add_option("--t-range", est_flags.t_range,
                       "T bin range: unit ([0,1]) or data");

  TrainFlags train_flags;
  auto* train = app.add_subcommand("train", "Train SF on a sample CSV");
  train->add_option("--data", train_flags.data_file, "Sample CSV")->required();
  train->add_option("--features", train_flags.features, "Output features")
      ->required();
  train->add_option("--optimizer", train_flags.optimizer, "lbfgs or gd");
  train->add_option("--out", train_flags.out, "Output directory")->required();
  train->add_option("--seed", train_flags.seed, "Weight initialization seed");
  train->add_option("--bins", train_flags.bins, "Bins per dimension");
  train->add_option("--max-iterations", train_flags.max_iterations,
                    "Optimizer iteration budget");

  DumpFlags dump_flags;
  auto* dump = app.add_subcommand("dump", "Write a simulation dataset as CSV");
  dump->add_option("--sim", dump_flags.sim, "Simulation id 1-4");
  dump->add_option("--seed", dump_flags.seed, "Base seed");
  dump->add_option("--rep", dump_flags.rep, "Repetition index");
  dump->add_option("--split", dump_flags.split, "test or train");
  dump->add_option("--out", dump_flags.out, "Output CSV")->required();

  TransformFlags tf_flags;
  auto* transform = app.add_subcommand("transform", "Apply trained weights");
  transform->add_option("--weights", tf_flags.weights_file, "Weights CSV")
      ->required();
  transform->add_option("--data", tf_flags.data_file, "Sample CSV")->required();
  transform->add_option("--out", tf_flags.out, "Output CSV")->required();

  std::vector<std::string> argv_store{"sfinfo"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUserError;
  }

  try {
    if (*simulate) return cmd_simulate(sim_flags, *simulate, err);
    if (*estimate) return cmd_estimate(est_flags, out);
    if (*train) return cmd_train(train_flags, err);
    if (*dump) return cmd_dump(dump_flags);
    if (*transform) return cmd_transform(tf_flags);
  } catch (const ConfigError& e) {
    // Bad flag values are invocation errors, so show the usage as well.
    const CLI::App* active = app.get_subcommands().front();
    err << "error: " << e.what() << "\n\n" << active->help("sfinfo");
    return kExitUserError;
  } catch (const UserError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUserError;
  } catch (const RunError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitUserError;
}

}  // namespace sfinfo

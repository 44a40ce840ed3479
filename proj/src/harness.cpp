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

#include "sfinfo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "sfinfo/datagen.hpp"
#include "sfinfo/error.hpp"

namespace sfinfo {

namespace {
constexpr std::uint64_t kDataTag = 1;
constexpr std::uint64_t kWeightTag = 2;
}  // namespace

std::string_view to_string(EvalSplit split) {
  return split == EvalSplit::kTest ? "test" : "train";
}

std::optional<EvalSplit> parse_eval_split(std::string_view name) {
  if (name == "test") return EvalSplit::kTest;
  if (name == "train") return EvalSplit::kTrain;
  return std::nullopt;
}

void SimulationConfig::validate() const {
  if (sim_id < 1 || sim_id > 4) {
    throw ConfigError("simulation id must be in 1-4, got " +
                      std::to_string(sim_id));
  }
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (bin_count < 2) throw ConfigError("bin_count must be >= 2");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  optimizer.validate();
}

InformationProbe::InformationProbe(const DataMatrix& x, int bin_count)
    : bin_count_(bin_count),
      x_binned_(discretize(x, make_bin_spec(x, bin_count))) {}

InformationProbe::Measurement InformationProbe::measure(
    const Representation& t) const {
  const BinnedMatrix t_binned =
      discretize(t, make_bin_spec(t, bin_count_, std::pair{0.0, 1.0}));
  Measurement m;
  m.mi_xt = mutual_information(joint_counts(x_binned_, t_binned));
  m.entropy_t = entropy(empirical_distribution(t_binned));
  return m;
}

RngSeed run_seed(std::uint64_t base_seed, int sim_id, int repetition) {
  return derive_seed(RngSeed{base_seed},
                     {static_cast<std::uint64_t>(sim_id),
                      static_cast<std::uint64_t>(repetition)});
}

RngSeed data_seed(RngSeed run) { return derive_seed(run, {kDataTag}); }
RngSeed weight_seed(RngSeed run) { return derive_seed(run, {kWeightTag}); }

RunTrajectory train_tracked(const DataMatrix& train, const DataMatrix& eval,
                            int features, RngSeed weights_seed, int bin_count,
                            double epsilon, const OptimizerConfig& optimizer) {
  if (features < 1) throw ConfigError("feature count must be >= 1");
  if (train.rows() != eval.rows()) {
    throw DimensionError("train and evaluation data differ in dimension");
  }
  RunTrajectory run;
  run.input_dim = static_cast<int>(train.rows());
  run.output_dim = features;
  run.bin_count = bin_count;
  const InformationProbe probe(eval, bin_count);
  const Eigen::Index k = features;
  const Eigen::Index d = train.rows();

  WeightMatrix w0 = init_weights(features, run.input_dim, weights_seed);
  Vector x0 = Eigen::Map<const Vector>(w0.data(), w0.size());

  const ObjectiveFn objective = [&](const Vector& params) {
    const Eigen::Map<const WeightMatrix> w(params.data(), k, d);
    ObjectiveEval e = sf_objective_and_gradient(w, train, epsilon);
    return ValueAndGradient{
        e.value, Eigen::Map<const Vector>(e.gradient.data(), e.gradient.size())};
  };

  WeightMatrix previous = w0;
  const IterationObserver observer = [&](const IterationEvent& event) {
    const Eigen::Map<const WeightMatrix> w(event.parameters.data(), k, d);
    const auto m = probe.measure(sf_forward(w, eval, epsilon));
    IterationRecord rec;
    rec.iteration = event.iteration;
    rec.objective = event.objective;
    rec.mi_xt = m.mi_xt;
    rec.entropy_t = m.entropy_t;
    rec.weight_delta = event.iteration == 0 ? 0.0 : (w - previous).norm();
    previous = w;
    run.records.push_back(rec);
  };

  MinimizeResult result = minimize(objective, std::move(x0), optimizer, observer);
  run.termination = result.reason;
  run.final_weights = Eigen::Map<const WeightMatrix>(result.x.data(), k, d);
  return run;
}

RunTrajectory run_single(const SimulationConfig& config, int repetition) {
  config.validate();
  const RngSeed seed = run_seed(config.base_seed, config.sim_id, repetition);
  try {
    const SimulationData data =
        make_simulation_data(config.sim_id, data_seed(seed));
    const DataMatrix& eval = config.eval_split == EvalSplit::kTest
                                 ? data.dataset.test
                                 : data.dataset.train;
    RunTrajectory run = train_tracked(
        data.dataset.train, eval, data.output_dim, weight_seed(seed),
        config.bin_count, config.epsilon, config.optimizer);
    run.sim_id = config.sim_id;
    run.repetition = repetition;
    run.seed = seed;
    return run;
  } catch (const std::exception& e) {
    throw RunError(config.sim_id, repetition, e.what());
  }
}

std::vector<RunTrajectory> run_batch(const SimulationConfig& config, int jobs) {
  config.validate();
  const int n = config.repetitions;
  std::vector<RunTrajectory> runs(n);
  std::vector<std::exception_ptr> failures(n);
  auto work = [&](int rep) {
    try {
      runs[rep] = run_single(config, rep);
    } catch (...) {
      failures[rep] = std::current_exception();
    }
  };

  const int threads = std::clamp(jobs, 1, n);
  if (threads == 1) {
    for (int rep = 0; rep < n; ++rep) work(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int rep = next++; rep < n; rep = next++) work(rep);
      });
    }
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return runs;
}

AggregateTrajectory aggregate(const std::vector<RunTrajectory>& runs) {
  if (runs.empty()) throw ConfigError("cannot aggregate zero runs");
  AggregateTrajectory agg;
  agg.sim_id = runs.front().sim_id;
  agg.length = std::ranges::min(runs, {}, [](const RunTrajectory& r) {
                 return r.records.size();
               }).records.size();
  agg.mean_mi.assign(agg.length, 0.0);
  agg.mean_entropy.assign(agg.length, 0.0);
  agg.mean_objective.assign(agg.length, 0.0);
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < agg.length; ++i) {
      agg.mean_mi[i] += run.records[i].mi_xt;
      agg.mean_entropy[i] += run.records[i].entropy_t;
      agg.mean_objective[i] += run.records[i].objective;
    }
  }
  const auto count = static_cast<double>(runs.size());
  for (std::size_t i = 0; i < agg.length; ++i) {
    agg.mean_mi[i] /= count;
    agg.mean_entropy[i] /= count;
    agg.mean_objective[i] /= count;
  }
  return agg;
}

}  // namespace sfinfo

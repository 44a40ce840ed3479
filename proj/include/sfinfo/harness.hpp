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

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sfinfo/info_theory.hpp"
#include "sfinfo/optimizer.hpp"
#include "sfinfo/rng.hpp"
#include "sfinfo/sparse_filtering.hpp"

namespace sfinfo {

enum class EvalSplit { kTest, kTrain };

std::string_view to_string(EvalSplit split);
std::optional<EvalSplit> parse_eval_split(std::string_view name);

struct SimulationConfig {
  int sim_id = 1;
  int repetitions = 10;
  std::uint64_t base_seed = 42;
  int bin_count = kDefaultBinCount;
  double epsilon = kDefaultSoftAbsEpsilon;
  OptimizerConfig optimizer;
  EvalSplit eval_split = EvalSplit::kTest;

  void validate() const;

  friend bool operator==(const SimulationConfig&,
                         const SimulationConfig&) = default;
};

struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;
  double mi_xt = 0.0;      // I[X;T], bits
  double entropy_t = 0.0;  // H[T], bits
  // Frobenius norm of W_t - W_{t-1}; 0 at iteration 0.
  double weight_delta = 0.0;

  friend bool operator==(const IterationRecord&,
                         const IterationRecord&) = default;
};

struct RunTrajectory {
  int sim_id = 0;
  int repetition = 0;
  RngSeed seed;
  int input_dim = 0;
  int output_dim = 0;
  int bin_count = kDefaultBinCount;
  std::vector<IterationRecord> records;
  TerminationReason termination = TerminationReason::kMaxIterations;
  WeightMatrix final_weights;
};

struct AggregateTrajectory {
  int sim_id = 0;
  std::size_t length = 0;
  std::vector<double> mean_mi;
  std::vector<double> mean_entropy;
  std::vector<double> mean_objective;
};

// Binning estimator with the X discretization frozen at construction: X is
// binned over its own per-dimension range, T over the fixed [0, 1].
class InformationProbe {
 public:
  InformationProbe(const DataMatrix& x, int bin_count);

  struct Measurement {
    double mi_xt = 0.0;
    double entropy_t = 0.0;
  };

  Measurement measure(const Representation& t) const;
  const BinnedMatrix& x_binned() const { return x_binned_; }

 private:
  int bin_count_;
  BinnedMatrix x_binned_;
};

// Seed of one repetition, mixed from (base_seed, sim_id, repetition).
RngSeed run_seed(std::uint64_t base_seed, int sim_id, int repetition);
// Substreams of a run seed.
RngSeed data_seed(RngSeed run);
RngSeed weight_seed(RngSeed run);

// Trains a k-feature SF model on `train` from weights drawn with
// `weights_seed`, recording I[X;T] and H[T] on `eval` at every accepted
// iterate. Fills records, termination, dims and final_weights only.
RunTrajectory train_tracked(const DataMatrix& train, const DataMatrix& eval,
                            int features, RngSeed weights_seed, int bin_count,
                            double epsilon, const OptimizerConfig& optimizer);

RunTrajectory run_single(const SimulationConfig& config, int repetition);

// Runs repetitions 0..repetitions-1, on up to `jobs` threads. Output does not
// depend on `jobs`. The lowest failing repetition is rethrown as RunError.
std::vector<RunTrajectory> run_batch(const SimulationConfig& config,
                                     int jobs = 1);

// Per-iteration means over all runs, truncated to the shortest run.
AggregateTrajectory aggregate(const std::vector<RunTrajectory>& runs);

}  // namespace sfinfo

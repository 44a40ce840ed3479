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

#include <Eigen/Dense>

#include "sfinfo/rng.hpp"
#include "sfinfo/sparse_filtering.hpp"

namespace sfinfo {

inline constexpr int kTrainSamples = 900;
inline constexpr int kTestSamples = 100;

struct MvnSpec {
  Vector mean;
  Matrix covariance;
};

struct Dataset {
  DataMatrix train;
  DataMatrix test;
};

struct SimulationData {
  Dataset dataset;
  int input_dim = 0;
  int output_dim = 0;
};

// Substream tags applied to a data seed with derive_seed().
enum class DataStream : std::uint64_t {
  kMean = 1,
  kCovariance = 2,
  kTrain = 3,
  kTest = 4,
};

// d x n matrix with i.i.d. N(0, sigma^2) entries, drawn sample by sample.
DataMatrix sample_isotropic_gaussian(int d, double sigma, int n, RngSeed seed);

// (M^T M) / d + 0.1 I with M a d x d standard normal matrix.
Matrix random_spd(int d, RngSeed seed);

// Columns mean + L z with L the lower Cholesky factor of the covariance.
// Throws NotPositiveDefiniteError when the factorization fails.
DataMatrix sample_mvn(const MvnSpec& spec, int n, RngSeed seed);

// Mean entries from U(-5, 5), covariance from random_spd.
MvnSpec random_mvn_spec(int d, RngSeed seed);

// Data for simulations 1..4 with the 900/100 train/test split:
//   1: 2-D isotropic N(0, 0.5^2) -> 2 features
//   2: 4-D random Gaussian -> 2 features
//   3: 4-D random Gaussian -> 8 features
//   4: 10-D random Gaussian -> 4 features
SimulationData make_simulation_data(int sim_id, RngSeed seed);

}  // namespace sfinfo

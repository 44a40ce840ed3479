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

#include "sfinfo/datagen.hpp"

#include <string>

#include "sfinfo/error.hpp"

namespace sfinfo {

namespace {

RngSeed substream(RngSeed seed, DataStream stream) {
  return derive_seed(seed, {static_cast<std::uint64_t>(stream)});
}

Matrix standard_normal(int rows, int cols, RngSeed seed) {
  Random rng(seed);
  Matrix z(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) z(r, c) = rng.normal();
  }
  return z;
}

Dataset split_mvn(const MvnSpec& spec, RngSeed seed) {
  return Dataset{sample_mvn(spec, kTrainSamples, substream(seed, DataStream::kTrain)),
                 sample_mvn(spec, kTestSamples, substream(seed, DataStream::kTest))};
}

}  // namespace

DataMatrix sample_isotropic_gaussian(int d, double sigma, int n, RngSeed seed) {
  if (d < 1 || n < 1) throw ConfigError("need d >= 1 and n >= 1");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  return sigma * standard_normal(d, n, seed);
}

Matrix random_spd(int d, RngSeed seed) {
  if (d < 1) throw ConfigError("need d >= 1");
  Random rng(seed);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = rng.normal();
  }
  Matrix sigma = (m.transpose() * m) / static_cast<double>(d);
  // Symmetrize exactly; the product is symmetric only up to rounding.
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  sigma.diagonal().array() += 0.1;
  return sigma;
}

DataMatrix sample_mvn(const MvnSpec& spec, int n, RngSeed seed) {
  const auto d = spec.mean.size();
  if (d < 1 || n < 1) throw ConfigError("need d >= 1 and n >= 1");
  if (spec.covariance.rows() != d || spec.covariance.cols() != d) {
    throw DimensionError("covariance shape does not match mean length");
  }
  Eigen::LLT<Matrix> llt(spec.covariance);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("covariance is not positive definite");
  }
  const Matrix lower = llt.matrixL();
  DataMatrix x = lower * standard_normal(static_cast<int>(d), n, seed);
  x.colwise() += spec.mean;
  return x;
}

MvnSpec random_mvn_spec(int d, RngSeed seed) {
  if (d < 1) throw ConfigError("need d >= 1");
  MvnSpec spec;
  Random rng(substream(seed, DataStream::kMean));
  spec.mean.resize(d);
  for (int i = 0; i < d; ++i) spec.mean[i] = rng.uniform(-5.0, 5.0);
  spec.covariance = random_spd(d, substream(seed, DataStream::kCovariance));
  return spec;
}

SimulationData make_simulation_data(int sim_id, RngSeed seed) {
  SimulationData out;
  switch (sim_id) {
    case 1:
      out.input_dim = 2;
      out.output_dim = 2;
      out.dataset.train = sample_isotropic_gaussian(
          2, 0.5, kTrainSamples, substream(seed, DataStream::kTrain));
      out.dataset.test = sample_isotropic_gaussian(
          2, 0.5, kTestSamples, substream(seed, DataStream::kTest));
      return out;
    case 2:
      out.input_dim = 4;
      out.output_dim = 2;
      break;
    case 3:
      out.input_dim = 4;
      out.output_dim = 8;
      break;
    case 4:
      out.input_dim = 10;
      out.output_dim = 4;
      break;
    default:
      throw ConfigError("unknown simulation id " + std::to_string(sim_id) +
                        "; valid ids are 1-4");
  }
  out.dataset = split_mvn(random_mvn_spec(out.input_dim, seed), seed);
  return out;
}

}  // namespace sfinfo

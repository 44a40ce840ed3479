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

#include "sfinfo/sparse_filtering.hpp"

#include <cmath>
#include <string>

#include "sfinfo/error.hpp"

namespace sfinfo {

namespace {

constexpr double kMinNorm = 1e-300;

void check_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInputError(std::string(what) + " contains non-finite entries");
  }
}

void check_shapes(const WeightMatrix& w, const DataMatrix& x) {
  if (w.rows() < 1 || x.rows() < 1 || x.cols() < 1) {
    throw DimensionError("weights and data must be non-empty");
  }
  if (w.cols() != x.rows()) {
    throw DimensionError("weight matrix has " + std::to_string(w.cols()) +
                         " columns but data has " + std::to_string(x.rows()) +
                         " dimensions");
  }
}

// Forward intermediates kept for the backward pass.
struct ForwardPass {
  Matrix activations;  // W X
  Matrix magnitudes;   // soft_abs(W X)
  Vector row_norms;
  Matrix row_normalized;
  Eigen::RowVectorXd col_norms;
  Matrix output;
};

ForwardPass forward(const WeightMatrix& w, const DataMatrix& x,
                    double epsilon) {
  check_shapes(w, x);
  check_finite(w, "weight matrix");
  check_finite(x, "data matrix");
  ForwardPass f;
  f.activations = w * x;
  f.magnitudes = soft_abs(f.activations, epsilon);
  f.row_norms = f.magnitudes.rowwise().norm();
  if ((f.row_norms.array() < kMinNorm).any()) {
    throw DegenerateError("row with zero l2 norm");
  }
  f.row_normalized = f.row_norms.cwiseInverse().asDiagonal() * f.magnitudes;
  f.col_norms = f.row_normalized.colwise().norm();
  if ((f.col_norms.array() < kMinNorm).any()) {
    throw DegenerateError("column with zero l2 norm");
  }
  f.output = f.row_normalized * f.col_norms.cwiseInverse().asDiagonal();
  return f;
}

}  // namespace

Matrix soft_abs(const Matrix& m, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw InvalidInputError("soft_abs epsilon must be positive");
  }
  check_finite(m, "soft_abs input");
  return (m.array().square() + epsilon).sqrt().matrix();
}

Matrix row_normalize(const Matrix& m) {
  const Vector norms = m.rowwise().norm();
  if ((norms.array() < kMinNorm).any()) {
    throw DegenerateError("row with zero l2 norm");
  }
  return norms.cwiseInverse().asDiagonal() * m;
}

Matrix col_normalize(const Matrix& m) {
  const Eigen::RowVectorXd norms = m.colwise().norm();
  if ((norms.array() < kMinNorm).any()) {
    throw DegenerateError("column with zero l2 norm");
  }
  return m * norms.cwiseInverse().asDiagonal();
}

Representation sf_forward(const WeightMatrix& w, const DataMatrix& x,
                          double epsilon) {
  return forward(w, x, epsilon).output;
}

ObjectiveEval sf_objective_and_gradient(const WeightMatrix& w,
                                        const DataMatrix& x, double epsilon) {
  const ForwardPass f = forward(w, x, epsilon);
  ObjectiveEval eval;
  eval.value = f.output.sum();

  // For y = v / |v| the backward map is dv = (dy - y (y . dy)) / |v|.
  // The upstream gradient of the sum is all ones.
  const Eigen::RowVectorXd col_dot = f.output.colwise().sum();
  Matrix d_row_normalized =
      (Matrix::Ones(f.output.rows(), f.output.cols()) -
       f.output * col_dot.asDiagonal()) *
      f.col_norms.cwiseInverse().asDiagonal();

  const Vector row_dot =
      f.row_normalized.cwiseProduct(d_row_normalized).rowwise().sum();
  Matrix d_magnitudes = f.row_norms.cwiseInverse().asDiagonal() *
                        (d_row_normalized -
                         row_dot.asDiagonal() * f.row_normalized);

  // d sqrt(a^2 + eps) / da = a / sqrt(a^2 + eps).
  const Matrix d_activations =
      d_magnitudes.cwiseProduct(f.activations.cwiseQuotient(f.magnitudes));
  eval.gradient = d_activations * x.transpose();
  return eval;
}

WeightMatrix init_weights(int k, int d, RngSeed seed) {
  if (k < 1 || d < 1) {
    throw ConfigError("init_weights requires k >= 1 and d >= 1");
  }
  Random rng(seed);
  WeightMatrix w(k, d);
  // Row-major fill so the draw order does not depend on storage layout.
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) w(i, j) = rng.normal();
  }
  return w;
}

}  // namespace sfinfo

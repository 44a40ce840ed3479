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

namespace sfinfo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Samples are columns: a d x N matrix holds N samples of dimension d.
using DataMatrix = Matrix;
// k x d: one row of filter weights per output feature.
using WeightMatrix = Matrix;
// k x N, entries in [0, 1], every column unit l2 norm.
using Representation = Matrix;

inline constexpr double kDefaultSoftAbsEpsilon = 1e-8;

struct ObjectiveEval {
  double value = 0.0;
  WeightMatrix gradient;
};

// Elementwise sqrt(m^2 + epsilon), a differentiable stand-in for |m|.
Matrix soft_abs(const Matrix& m, double epsilon = kDefaultSoftAbsEpsilon);

// Divide each row (column) by its l2 norm. Throws DegenerateError if a norm
// falls below 1e-300.
Matrix row_normalize(const Matrix& m);
Matrix col_normalize(const Matrix& m);

// T = col_normalize(row_normalize(soft_abs(W X))).
Representation sf_forward(const WeightMatrix& w, const DataMatrix& x,
                          double epsilon = kDefaultSoftAbsEpsilon);

// Sum of all entries of sf_forward(w, x) and its exact gradient with respect
// to w, by reverse-mode differentiation through both normalizations.
ObjectiveEval sf_objective_and_gradient(const WeightMatrix& w,
                                        const DataMatrix& x,
                                        double epsilon = kDefaultSoftAbsEpsilon);

// k x d matrix of i.i.d. standard normal entries.
WeightMatrix init_weights(int k, int d, RngSeed seed);

}  // namespace sfinfo

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

#include <functional>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace sfinfo {

struct ValueAndGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

using ObjectiveFn = std::function<ValueAndGradient(const Eigen::VectorXd&)>;

enum class OptimizerMethod { kLbfgs, kGradientDescent };

enum class TerminationReason {
  kGradientConverged,
  kObjectiveConverged,
  kMaxIterations,
  kLineSearchFailed,
};

std::string_view to_string(OptimizerMethod method);
std::string_view to_string(TerminationReason reason);
std::optional<OptimizerMethod> parse_optimizer_method(std::string_view name);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::kLbfgs;
  int max_iterations = 200;
  // Infinity norm of the gradient.
  double gradient_tolerance = 1e-5;
  // (f_prev - f) / max(|f_prev|, |f|, 1).
  double relative_objective_tolerance = 2.22e-9;
  int memory = 10;
  double step_size = 1e-2;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;

  // Throws ConfigError on violated invariants.
  void validate() const;

  friend bool operator==(const OptimizerConfig&,
                         const OptimizerConfig&) = default;
};

// Payload for the per-iteration observer. Only accepted iterates are
// reported; iteration 0 is the starting point.
struct IterationEvent {
  int iteration = 0;
  const Eigen::VectorXd& parameters;
  double objective = 0.0;
  double gradient_infnorm = 0.0;
};

using IterationObserver = std::function<void(const IterationEvent&)>;

struct MinimizeResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  TerminationReason reason = TerminationReason::kMaxIterations;
  int iterations = 0;
};

MinimizeResult minimize(const ObjectiveFn& objective, Eigen::VectorXd x0,
                        const OptimizerConfig& config,
                        const IterationObserver& observer = {});

struct LineSearchResult {
  double step = 0.0;
  double value = 0.0;
  Eigen::VectorXd gradient;
  int evaluations = 0;
};

inline constexpr int kMaxLineSearchEvaluations = 50;

// Strong Wolfe line search by bracketing and cubic-interpolation zoom.
// Returns nullopt when no acceptable step is found within
// kMaxLineSearchEvaluations evaluations. Throws PreconditionError unless
// g0 . direction < 0.
std::optional<LineSearchResult> wolfe_line_search(
    const ObjectiveFn& objective, const Eigen::VectorXd& x,
    const Eigen::VectorXd& direction, double f0, const Eigen::VectorXd& g0,
    double c1, double c2, double initial_step = 1.0);

}  // namespace sfinfo

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

#include "sfinfo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <utility>

#include "sfinfo/error.hpp"

namespace sfinfo {

std::string_view to_string(OptimizerMethod method) {
  switch (method) {
    case OptimizerMethod::kLbfgs:
      return "lbfgs";
    case OptimizerMethod::kGradientDescent:
      return "gd";
  }
  return "unknown";
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kGradientConverged:
      return "gradient_converged";
    case TerminationReason::kObjectiveConverged:
      return "objective_converged";
    case TerminationReason::kMaxIterations:
      return "max_iterations";
    case TerminationReason::kLineSearchFailed:
      return "line_search_failed";
  }
  return "unknown";
}

std::optional<OptimizerMethod> parse_optimizer_method(std::string_view name) {
  if (name == "lbfgs") return OptimizerMethod::kLbfgs;
  if (name == "gd") return OptimizerMethod::kGradientDescent;
  return std::nullopt;
}

void OptimizerConfig::validate() const {
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(gradient_tolerance >= 0.0)) {
    throw ConfigError("gradient_tolerance must be >= 0");
  }
  if (!(relative_objective_tolerance >= 0.0)) {
    throw ConfigError("relative_objective_tolerance must be >= 0");
  }
  if (memory < 1) throw ConfigError("memory must be >= 1");
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw ConfigError("step_size must be positive");
  }
  if (!(0.0 < wolfe_c1 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0)) {
    throw ConfigError("Wolfe constants must satisfy 0 < c1 < c2 < 1");
  }
}

namespace {

// Evaluates the objective and rejects non-finite output.
ValueAndGradient evaluate(const ObjectiveFn& objective,
                          const Eigen::VectorXd& x, int iteration) {
  ValueAndGradient r = objective(x);
  if (!std::isfinite(r.value)) {
    throw NumericalError("objective is not finite", iteration);
  }
  if (r.gradient.size() != x.size()) {
    throw DimensionError("gradient size does not match parameter size");
  }
  if (!r.gradient.allFinite()) {
    throw NumericalError("gradient is not finite", iteration);
  }
  return r;
}

// phi(alpha) = f(x + alpha d) and its derivative along d.
struct LinePoint {
  double step = 0.0;
  double value = 0.0;
  double slope = 0.0;
  Eigen::VectorXd gradient;
};

// Minimizer of the cubic through (a, fa, da) and (b, fb, db), kept inside the
// middle 80% of the interval; bisection when the cubic is unusable.
double interpolate_step(const LinePoint& a, const LinePoint& b) {
  const double lo = std::min(a.step, b.step);
  const double hi = std::max(a.step, b.step);
  const double width = hi - lo;
  const double d1 =
      a.slope + b.slope - 3.0 * (a.value - b.value) / (a.step - b.step);
  const double radicand = d1 * d1 - a.slope * b.slope;
  double step = 0.5 * (lo + hi);
  if (radicand >= 0.0) {
    const double d2 = std::copysign(std::sqrt(radicand), b.step - a.step);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom != 0.0) {
      const double candidate =
          b.step - (b.step - a.step) * (b.slope + d2 - d1) / denom;
      if (std::isfinite(candidate)) step = candidate;
    }
  }
  return std::clamp(step, lo + 0.1 * width, hi - 0.1 * width);
}

std::optional<LineSearchResult> line_search(
    const ObjectiveFn& objective, const Eigen::VectorXd& x,
    const Eigen::VectorXd& direction, double f0, const Eigen::VectorXd& g0,
    double c1, double c2, double initial_step, int iteration) {
  const double slope0 = g0.dot(direction);
  if (!(slope0 < 0.0)) {
    throw PreconditionError("line search direction is not a descent direction");
  }
  if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
    throw PreconditionError("initial step must be positive and finite");
  }
  constexpr double kMaxStep = 1e20;

  int evaluations = 0;
  auto probe = [&](double step) {
    LinePoint p;
    p.step = step;
    ValueAndGradient r = evaluate(objective, x + step * direction, iteration);
    ++evaluations;
    p.value = r.value;
    p.slope = r.gradient.dot(direction);
    p.gradient = std::move(r.gradient);
    return p;
  };
  auto sufficient_decrease = [&](const LinePoint& p) {
    return p.value <= f0 + c1 * p.step * slope0;
  };
  auto curvature = [&](const LinePoint& p) {
    return std::abs(p.slope) <= -c2 * slope0;
  };
  auto accept = [&](LinePoint p) {
    return LineSearchResult{p.step, p.value, std::move(p.gradient),
                            evaluations};
  };

  // lo always satisfies sufficient decrease and has the lowest value seen;
  // the minimizer of phi along the Wolfe set lies between lo and hi.
  auto zoom = [&](LinePoint lo,
                  LinePoint hi) -> std::optional<LineSearchResult> {
    while (evaluations < kMaxLineSearchEvaluations) {
      if (std::abs(hi.step - lo.step) <=
          1e-16 * std::max(1.0, std::abs(lo.step))) {
        return std::nullopt;
      }
      LinePoint p = probe(interpolate_step(lo, hi));
      if (!sufficient_decrease(p) || p.value >= lo.value) {
        hi = std::move(p);
      } else {
        if (curvature(p)) return accept(std::move(p));
        if (p.slope * (hi.step - lo.step) >= 0.0) hi = std::move(lo);
        lo = std::move(p);
      }
    }
    return std::nullopt;
  };

  LinePoint prev{0.0, f0, slope0, g0};
  double step = initial_step;
  while (evaluations < kMaxLineSearchEvaluations) {
    LinePoint p = probe(step);
    if (!sufficient_decrease(p) || (evaluations > 1 && p.value >= prev.value)) {
      return zoom(std::move(prev), std::move(p));
    }
    if (curvature(p)) return accept(std::move(p));
    if (p.slope >= 0.0) return zoom(std::move(p), std::move(prev));
    prev = std::move(p);
    step = std::min(2.0 * step, kMaxStep);
    if (prev.step >= kMaxStep) return std::nullopt;
  }
  return std::nullopt;
}

double inf_norm(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

bool objective_stalled(double previous, double current, double tolerance) {
  const double scale =
      std::max({std::abs(previous), std::abs(current), 1.0});
  return (previous - current) / scale < tolerance;
}

// Two-loop recursion: returns -H g for the L-BFGS inverse Hessian estimate
// built from the stored (s, y) pairs, oldest first.
Eigen::VectorXd lbfgs_direction(
    const Eigen::VectorXd& gradient,
    const std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& history) {
  Eigen::VectorXd q = gradient;
  const auto m = history.size();
  std::vector<double> alpha(m), rho(m);
  for (std::size_t i = m; i-- > 0;) {
    const auto& [s, y] = history[i];
    rho[i] = 1.0 / y.dot(s);
    alpha[i] = rho[i] * s.dot(q);
    q -= alpha[i] * y;
  }
  if (m > 0) {
    const auto& [s, y] = history.back();
    q *= s.dot(y) / y.dot(y);
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto& [s, y] = history[i];
    const double beta = rho[i] * y.dot(q);
    q += (alpha[i] - beta) * s;
  }
  return -q;
}

MinimizeResult run_lbfgs(const ObjectiveFn& objective, Eigen::VectorXd x,
                         const OptimizerConfig& config,
                         const IterationObserver& observer) {
  ValueAndGradient current = evaluate(objective, x, 0);
  if (observer) {
    observer(IterationEvent{0, x, current.value, inf_norm(current.gradient)});
  }
  MinimizeResult result;
  if (inf_norm(current.gradient) < config.gradient_tolerance) {
    result.reason = TerminationReason::kGradientConverged;
    result.objective = current.value;
    result.x = std::move(x);
    return result;
  }

  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> history;
  int iteration = 0;
  result.reason = TerminationReason::kMaxIterations;
  while (iteration < config.max_iterations) {
    const int next = iteration + 1;
    Eigen::VectorXd direction = lbfgs_direction(current.gradient, history);
    if (!(current.gradient.dot(direction) < 0.0)) {
      history.clear();
      direction = -current.gradient;
    }
    auto initial_step = [&] {
      return history.empty() ? 1.0 / current.gradient.norm() : 1.0;
    };
    auto step = line_search(objective, x, direction, current.value,
                            current.gradient, config.wolfe_c1,
                            config.wolfe_c2, initial_step(), next);
    if (!step && !history.empty()) {
      // Retry once along steepest descent with a fresh memory.
      history.clear();
      direction = -current.gradient;
      step = line_search(objective, x, direction, current.value,
                         current.gradient, config.wolfe_c1, config.wolfe_c2,
                         initial_step(), next);
    }
    if (!step) {
      result.reason = TerminationReason::kLineSearchFailed;
      break;
    }

    Eigen::VectorXd s = step->step * direction;
    Eigen::VectorXd y = step->gradient - current.gradient;
    const double previous_value = current.value;
    x += s;
    current.value = step->value;
    current.gradient = std::move(step->gradient);
    iteration = next;

    if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
      history.emplace_back(std::move(s), std::move(y));
      if (static_cast<int>(history.size()) > config.memory) {
        history.pop_front();
      }
    }

    const double gnorm = inf_norm(current.gradient);
    if (observer) observer(IterationEvent{iteration, x, current.value, gnorm});
    if (gnorm < config.gradient_tolerance) {
      result.reason = TerminationReason::kGradientConverged;
      break;
    }
    if (objective_stalled(previous_value, current.value,
                          config.relative_objective_tolerance)) {
      result.reason = TerminationReason::kObjectiveConverged;
      break;
    }
  }
  result.iterations = iteration;
  result.objective = current.value;
  result.x = std::move(x);
  return result;
}

MinimizeResult run_gradient_descent(const ObjectiveFn& objective,
                                    Eigen::VectorXd x,
                                    const OptimizerConfig& config,
                                    const IterationObserver& observer) {
  ValueAndGradient current = evaluate(objective, x, 0);
  double gnorm = inf_norm(current.gradient);
  if (observer) observer(IterationEvent{0, x, current.value, gnorm});
  MinimizeResult result;
  result.reason = TerminationReason::kMaxIterations;
  int iteration = 0;
  if (gnorm < config.gradient_tolerance) {
    result.reason = TerminationReason::kGradientConverged;
  } else {
    while (iteration < config.max_iterations) {
      ++iteration;
      x -= config.step_size * current.gradient;
      const double previous_value = current.value;
      current = evaluate(objective, x, iteration);
      gnorm = inf_norm(current.gradient);
      if (observer) observer(IterationEvent{iteration, x, current.value, gnorm});
      if (gnorm < config.gradient_tolerance) {
        result.reason = TerminationReason::kGradientConverged;
        break;
      }
      if (objective_stalled(previous_value, current.value,
                            config.relative_objective_tolerance)) {
        result.reason = TerminationReason::kObjectiveConverged;
        break;
      }
    }
  }
  result.iterations = iteration;
  result.objective = current.value;
  result.x = std::move(x);
  return result;
}

}  // namespace

std::optional<LineSearchResult> wolfe_line_search(
    const ObjectiveFn& objective, const Eigen::VectorXd& x,
    const Eigen::VectorXd& direction, double f0, const Eigen::VectorXd& g0,
    double c1, double c2, double initial_step) {
  if (!(0.0 < c1 && c1 < c2 && c2 < 1.0)) {
    throw PreconditionError("Wolfe constants must satisfy 0 < c1 < c2 < 1");
  }
  return line_search(objective, x, direction, f0, g0, c1, c2, initial_step,
                     -1);
}

MinimizeResult minimize(const ObjectiveFn& objective, Eigen::VectorXd x0,
                        const OptimizerConfig& config,
                        const IterationObserver& observer) {
  config.validate();
  if (config.method == OptimizerMethod::kLbfgs) {
    return run_lbfgs(objective, std::move(x0), config, observer);
  }
  return run_gradient_descent(objective, std::move(x0), config, observer);
}

}  // namespace sfinfo

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

#include "sfinfo/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sfinfo/error.hpp"

namespace sfinfo {

namespace {

constexpr double kRangeWidening = 1e-12;

SymbolKey concat(const SymbolKey& a, const SymbolKey& b) {
  SymbolKey key;
  key.reserve(a.size() + b.size());
  key.insert(key.end(), a.begin(), a.end());
  key.insert(key.end(), b.begin(), b.end());
  return key;
}

double plogp_bits(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

std::vector<double> BinSpec::edges(int dim) const {
  std::vector<double> out(bin_count + 1);
  const double lo = lower.at(dim);
  const double hi = upper.at(dim);
  for (int b = 0; b <= bin_count; ++b) {
    out[b] = lo + (hi - lo) * static_cast<double>(b) / bin_count;
  }
  out[bin_count] = hi;
  return out;
}

SymbolKey BinnedMatrix::key(int sample) const {
  SymbolKey k(indices.rows());
  for (int r = 0; r < indices.rows(); ++r) k[r] = indices(r, sample);
  return k;
}

DiscreteDistribution::DiscreteDistribution(
    const std::map<SymbolKey, double>& weights) {
  double total = 0.0;
  for (const auto& [key, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidInputError("distribution weights must be finite and >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw InvalidInputError("distribution has no mass");
  }
  for (const auto& [key, w] : weights) {
    if (w > 0.0) mass_.emplace(key, w / total);
  }
}

DiscreteDistribution DiscreteDistribution::from_counts(
    const std::map<SymbolKey, std::int64_t>& counts) {
  std::map<SymbolKey, double> weights;
  for (const auto& [key, c] : counts) weights.emplace(key, static_cast<double>(c));
  return DiscreteDistribution(weights);
}

DiscreteDistribution DiscreteDistribution::uniform(
    const std::vector<SymbolKey>& support) {
  std::map<SymbolKey, double> weights;
  for (const auto& key : support) weights[key] = 1.0;
  return DiscreteDistribution(weights);
}

double DiscreteDistribution::probability(const SymbolKey& key) const {
  auto it = mass_.find(key);
  return it == mass_.end() ? 0.0 : it->second;
}

void JointCounts::add(const SymbolKey& a, const SymbolKey& b,
                      std::int64_t count) {
  if (count < 0) throw InvalidInputError("negative joint count");
  if (count == 0) return;
  counts_[{a, b}] += count;
  total_ += count;
}

std::map<SymbolKey, std::int64_t> JointCounts::marginal_a() const {
  std::map<SymbolKey, std::int64_t> out;
  for (const auto& [pair, c] : counts_) out[pair.first] += c;
  return out;
}

std::map<SymbolKey, std::int64_t> JointCounts::marginal_b() const {
  std::map<SymbolKey, std::int64_t> out;
  for (const auto& [pair, c] : counts_) out[pair.second] += c;
  return out;
}

DiscreteDistribution JointCounts::joint_distribution() const {
  std::map<SymbolKey, std::int64_t> flat;
  for (const auto& [pair, c] : counts_) flat[concat(pair.first, pair.second)] += c;
  return DiscreteDistribution::from_counts(flat);
}

BinSpec make_bin_spec(const Eigen::MatrixXd& data, int bin_count,
                      std::optional<std::pair<double, double>> fixed_range) {
  if (bin_count < 2) {
    throw ConfigError("bin_count must be at least 2, got " +
                      std::to_string(bin_count));
  }
  BinSpec spec;
  spec.bin_count = bin_count;
  const auto dims = static_cast<std::size_t>(data.rows());
  if (fixed_range) {
    const auto [lo, hi] = *fixed_range;
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw ConfigError("fixed bin range must satisfy low < high");
    }
    spec.lower.assign(dims, lo);
    spec.upper.assign(dims, hi);
    return spec;
  }
  if (data.cols() < 1) {
    throw InvalidInputError("cannot derive bin ranges from zero samples");
  }
  if (!data.allFinite()) {
    throw InvalidInputError("data contains non-finite entries");
  }
  spec.lower.resize(dims);
  spec.upper.resize(dims);
  for (std::size_t r = 0; r < dims; ++r) {
    const double lo = data.row(r).minCoeff();
    const double hi = data.row(r).maxCoeff();
    spec.lower[r] = lo;
    // A constant dimension gets [v, v + 1e-12] as well.
    spec.upper[r] = hi + kRangeWidening;
  }
  return spec;
}

int bin_index(double v, double lo, double hi, int bin_count) {
  const double scaled = bin_count * (v - lo) / (hi - lo);
  if (!(scaled >= 0.0)) return 0;  // also catches NaN
  if (scaled >= bin_count) return bin_count - 1;
  return std::min(static_cast<int>(std::floor(scaled)), bin_count - 1);
}

BinnedMatrix discretize(const Eigen::MatrixXd& data, const BinSpec& spec) {
  if (data.rows() != spec.dims()) {
    throw DimensionError("data has " + std::to_string(data.rows()) +
                         " dimensions but bin spec has " +
                         std::to_string(spec.dims()));
  }
  BinnedMatrix out;
  out.bin_count = spec.bin_count;
  out.indices.resize(data.rows(), data.cols());
  for (Eigen::Index c = 0; c < data.cols(); ++c) {
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
      out.indices(r, c) =
          bin_index(data(r, c), spec.lower[r], spec.upper[r], spec.bin_count);
    }
  }
  return out;
}

DiscreteDistribution empirical_distribution(const BinnedMatrix& binned) {
  if (binned.samples() < 1) {
    throw InvalidInputError("empirical distribution needs at least one sample");
  }
  std::map<SymbolKey, std::int64_t> counts;
  for (int s = 0; s < binned.samples(); ++s) ++counts[binned.key(s)];
  return DiscreteDistribution::from_counts(counts);
}

double entropy(const DiscreteDistribution& p) {
  double h = 0.0;
  for (const auto& [key, prob] : p.probabilities()) h -= plogp_bits(prob);
  return std::max(h, 0.0);
}

double entropy_of_counts(const std::map<SymbolKey, std::int64_t>& counts,
                         std::int64_t total) {
  // Summing over sorted counts makes the result independent of key order,
  // so H(A,B) and H(B,A) agree bit for bit.
  std::vector<std::int64_t> sorted;
  sorted.reserve(counts.size());
  for (const auto& [key, c] : counts) sorted.push_back(c);
  std::sort(sorted.begin(), sorted.end());
  double h = 0.0;
  const auto n = static_cast<double>(total);
  for (std::int64_t c : sorted) h -= plogp_bits(static_cast<double>(c) / n);
  return std::max(h, 0.0);
}

JointCounts joint_counts(const BinnedMatrix& a, const BinnedMatrix& b) {
  if (a.samples() != b.samples()) {
    throw DimensionError("joint counts need equal sample counts (" +
                         std::to_string(a.samples()) + " vs " +
                         std::to_string(b.samples()) + ")");
  }
  JointCounts joint;
  for (int s = 0; s < a.samples(); ++s) joint.add(a.key(s), b.key(s));
  return joint;
}

double mutual_information(const JointCounts& joint) {
  std::map<SymbolKey, std::int64_t> flat;
  for (const auto& [pair, c] : joint.counts()) flat[concat(pair.first, pair.second)] += c;
  const double h_a = entropy_of_counts(joint.marginal_a(), joint.total());
  const double h_b = entropy_of_counts(joint.marginal_b(), joint.total());
  const double h_ab = entropy_of_counts(flat, joint.total());
  return std::max(h_a + h_b - h_ab, 0.0);
}

double kl_divergence(const DiscreteDistribution& p,
                     const DiscreteDistribution& q) {
  double kl = 0.0;
  for (const auto& [key, prob] : p.probabilities()) {
    const double q_prob = q.probability(key);
    if (q_prob <= 0.0) {
      throw AbsoluteContinuityError(
          "p assigns mass to a symbol outside the support of q");
    }
    kl += prob * std::log2(prob / q_prob);
  }
  return std::max(kl, 0.0);
}

DiscreteDistribution product_of_marginals(const JointCounts& joint) {
  const auto pa = DiscreteDistribution::from_counts(joint.marginal_a());
  const auto pb = DiscreteDistribution::from_counts(joint.marginal_b());
  std::map<SymbolKey, double> weights;
  for (const auto& [ka, a] : pa.probabilities()) {
    for (const auto& [kb, b] : pb.probabilities()) {
      weights.emplace(concat(ka, kb), a * b);
    }
  }
  return DiscreteDistribution(weights);
}

FdlTerms fdl_objective_terms(const BinnedMatrix& x_binned,
                             const BinnedMatrix& t_binned, int t_bin_count,
                             int t_dims) {
  if (t_bin_count < 2 || t_dims < 1) {
    throw ConfigError("uniform reference needs bin_count >= 2 and t_dims >= 1");
  }
  const JointCounts joint = joint_counts(x_binned, t_binned);
  FdlTerms terms;
  terms.mi_term =
      kl_divergence(joint.joint_distribution(), product_of_marginals(joint));
  terms.entropy_term = entropy_of_counts(joint.marginal_b(), joint.total());
  // KL against the uniform over bin_count^t_dims cells has a closed form.
  terms.kl_uniform_term =
      t_dims * std::log2(static_cast<double>(t_bin_count)) - terms.entropy_term;
  return terms;
}

}  // namespace sfinfo

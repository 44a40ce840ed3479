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

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sfinfo {

inline constexpr int kDefaultBinCount = 30;

// One multivariate symbol: the bin index of a sample in every dimension.
using SymbolKey = std::vector<int>;

// Equal-width bins per dimension over [lower, upper].
struct BinSpec {
  std::vector<double> lower;
  std::vector<double> upper;
  int bin_count = kDefaultBinCount;

  int dims() const { return static_cast<int>(lower.size()); }
  // bin_count + 1 edges for dimension `dim`.
  std::vector<double> edges(int dim) const;
};

struct BinnedMatrix {
  Eigen::MatrixXi indices;  // dimensions x samples
  int bin_count = kDefaultBinCount;

  int dims() const { return static_cast<int>(indices.rows()); }
  int samples() const { return static_cast<int>(indices.cols()); }
  SymbolKey key(int sample) const;
};

// Normalized probability mass over symbols. Only symbols with positive mass
// are stored; std::map keeps iteration (and therefore summation) order fixed.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;
  // Normalizes the given nonnegative weights; zero weights are dropped.
  explicit DiscreteDistribution(const std::map<SymbolKey, double>& weights);

  static DiscreteDistribution from_counts(
      const std::map<SymbolKey, std::int64_t>& counts);
  static DiscreteDistribution uniform(const std::vector<SymbolKey>& support);

  const std::map<SymbolKey, double>& probabilities() const { return mass_; }
  std::size_t support_size() const { return mass_.size(); }
  double probability(const SymbolKey& key) const;

 private:
  std::map<SymbolKey, double> mass_;
};

// Co-occurrence counts of (key_a, key_b) pairs.
class JointCounts {
 public:
  using Pair = std::pair<SymbolKey, SymbolKey>;

  void add(const SymbolKey& a, const SymbolKey& b, std::int64_t count = 1);

  const std::map<Pair, std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const { return total_; }
  std::map<SymbolKey, std::int64_t> marginal_a() const;
  std::map<SymbolKey, std::int64_t> marginal_b() const;

  // The joint over concatenated keys [key_a..., key_b...].
  DiscreteDistribution joint_distribution() const;

 private:
  std::map<Pair, std::int64_t> counts_;
  std::int64_t total_ = 0;
};

struct FdlTerms {
  double mi_term = 0.0;          // D_KL[p(X,T) || p(X)p(T)]
  double kl_uniform_term = 0.0;  // D_KL[p(T) || uniform over all T cells]
  double entropy_term = 0.0;     // H[T]
};

// Per-dimension [min, max] of `data` (rows are dimensions), with the top edge
// widened by 1e-12 so the maximum lands in the last bin; or `fixed_range` for
// every dimension when given.
BinSpec make_bin_spec(const Eigen::MatrixXd& data, int bin_count,
                      std::optional<std::pair<double, double>> fixed_range =
                          std::nullopt);

// Bin index floor(B (v - lo) / (hi - lo)) clamped into [0, B - 1].
int bin_index(double v, double lo, double hi, int bin_count);
BinnedMatrix discretize(const Eigen::MatrixXd& data, const BinSpec& spec);

DiscreteDistribution empirical_distribution(const BinnedMatrix& binned);

// All information quantities are in bits.
double entropy(const DiscreteDistribution& p);
double entropy_of_counts(const std::map<SymbolKey, std::int64_t>& counts,
                         std::int64_t total);

JointCounts joint_counts(const BinnedMatrix& a, const BinnedMatrix& b);

// H(A) + H(B) - H(A,B), with round-off negatives clamped to zero.
double mutual_information(const JointCounts& joint);

// Throws AbsoluteContinuityError if p has mass outside q's support.
double kl_divergence(const DiscreteDistribution& p,
                     const DiscreteDistribution& q);

// Product of the two marginals of `joint`, over concatenated keys.
DiscreteDistribution product_of_marginals(const JointCounts& joint);

FdlTerms fdl_objective_terms(const BinnedMatrix& x_binned,
                             const BinnedMatrix& t_binned, int t_bin_count,
                             int t_dims);

}  // namespace sfinfo

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

#include <array>
#include <cstdint>
#include <initializer_list>

namespace sfinfo {

struct RngSeed {
  std::uint64_t value = 0;

  friend bool operator==(RngSeed, RngSeed) = default;
};

// SplitMix64 finalizer. Used both to expand a seed into generator state and
// to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives a child seed from a parent and a list of tags. Distinct tag lists
// yield unrelated streams.
RngSeed derive_seed(RngSeed parent, std::initializer_list<std::uint64_t> tags);

// xoshiro256** 1.0 (Blackman & Vigna). State is filled from the seed by four
// successive SplitMix64 outputs.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(RngSeed seed);

  std::uint64_t operator()();

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  std::array<std::uint64_t, 4> s_;
};

// Portable variates on top of Xoshiro256. std::*_distribution is avoided
// because its output differs between standard library implementations.
class Random {
 public:
  explicit Random(RngSeed seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double low, double high);
  // Standard normal by the Box-Muller transform; the second variate of each
  // pair is cached and returned by the next call.
  double normal();

 private:
  Xoshiro256 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sfinfo

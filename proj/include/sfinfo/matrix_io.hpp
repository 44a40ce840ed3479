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

#include <filesystem>
#include <string>

#include "sfinfo/sparse_filtering.hpp"

namespace sfinfo {

// Shortest-roundtrip-safe rendering: 17 significant digits.
std::string format_real(double v);

// Sample CSV: header `dim_0,...,dim_{d-1}`, then one sample per line. The
// in-memory matrix is d x N (samples are columns).
void write_samples_csv(const std::filesystem::path& path, const DataMatrix& x);
DataMatrix read_samples_csv(const std::filesystem::path& path);

// Same file layout, but each line is one matrix row (used for weights: one
// line per feature, one column per input dimension).
void write_rows_csv(const std::filesystem::path& path, const Matrix& m);
Matrix read_rows_csv(const std::filesystem::path& path);

}  // namespace sfinfo

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

#include "sfinfo/matrix_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "sfinfo/error.hpp"

namespace sfinfo {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_real(const std::string& text, const std::string& where) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  while (end && (*end == ' ' || *end == '\r' || *end == '\t')) ++end;
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("not a finite real '" + text + "' at " + where);
  }
  return v;
}

// Rows of the file body (header skipped), as a records x fields matrix.
Matrix read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading", path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty CSV file " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_fields(line);
  const std::size_t width = header.size();
  for (std::size_t i = 0; i < width; ++i) {
    if (header[i] != "dim_" + std::to_string(i)) {
      throw ParseError("bad CSV header in " + path.string() +
                       ": expected dim_0,...,dim_{d-1}");
    }
  }
  std::vector<double> values;
  std::size_t records = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields at " +
                       where);
    }
    for (const auto& f : fields) values.push_back(parse_real(f, where));
    ++records;
  }
  if (records == 0) throw ParseError("no data rows in " + path.string());
  Matrix table(records, width);
  for (std::size_t r = 0; r < records; ++r) {
    for (std::size_t c = 0; c < width; ++c) table(r, c) = values[r * width + c];
  }
  return table;
}

void write_table(const std::filesystem::path& path, const Matrix& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path.string());
  for (Eigen::Index c = 0; c < table.cols(); ++c) {
    out << (c ? "," : "") << "dim_" << c;
  }
  out << '\n';
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.cols(); ++c) {
      out << (c ? "," : "") << format_real(table(r, c));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed", path.string());
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_samples_csv(const std::filesystem::path& path, const DataMatrix& x) {
  write_table(path, x.transpose());
}

DataMatrix read_samples_csv(const std::filesystem::path& path) {
  return read_table(path).transpose();
}

void write_rows_csv(const std::filesystem::path& path, const Matrix& m) {
  write_table(path, m);
}

Matrix read_rows_csv(const std::filesystem::path& path) {
  return read_table(path);
}

}  // namespace sfinfo

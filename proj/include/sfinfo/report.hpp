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
#include <filesystem>
#include <string>
#include <vector>

#include "sfinfo/harness.hpp"

namespace sfinfo {

struct PlotStyle {
  int width = 640;
  int height = 480;
  std::string start_marker_color = "green";
  std::string end_marker_color = "red";
  // Per-run colors. Hex values only, so the named start/end marker colors
  // never appear on anything else.
  std::vector<std::string> run_colors = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
};

inline constexpr const char* kRunCsvHeader =
    "iteration,objective,mi_xt_bits,entropy_t_bits,weight_delta";
inline constexpr const char* kAggregateCsvHeader =
    "iteration,mean_mi_xt_bits,mean_entropy_t_bits,mean_objective";

std::string run_csv_name(int sim_id, int repetition);
std::string aggregate_csv_name(int sim_id);
std::string information_plane_svg_name(int sim_id);
std::string dynamics_svg_name(int sim_id);

// Writes run_<sim>_<rep>.csv for every run and aggregate_<sim>.csv into
// out_dir (created if missing). Returns the written paths in that order.
std::vector<std::filesystem::path> export_csv(
    const std::vector<RunTrajectory>& runs, const AggregateTrajectory& agg,
    const std::filesystem::path& out_dir);

std::vector<IterationRecord> read_run_csv(const std::filesystem::path& path);

// Mean I[X;T] (x) against mean H[T] (y) per iteration, first point green and
// last point red.
std::string information_plane_svg(const AggregateTrajectory& agg,
                                  const PlotStyle& style = {});
void render_information_plane(const AggregateTrajectory& agg,
                              const std::filesystem::path& out,
                              const PlotStyle& style = {});

// Four panels, one polyline per run in each: (a) I[X;T], (b) H[T],
// (c) weight change, each against iteration, and (d) per-run information
// plane traces.
std::string dynamics_panels_svg(const std::vector<RunTrajectory>& runs,
                                const PlotStyle& style = {});
void render_dynamics_panels(const std::vector<RunTrajectory>& runs,
                            const std::filesystem::path& out,
                            const PlotStyle& style = {});

}  // namespace sfinfo

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

#include "sfinfo/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "sfinfo/error.hpp"
#include "sfinfo/matrix_io.hpp"

namespace sfinfo {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 50.0;
constexpr int kTicks = 5;

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

// Data range with 5% padding on each side.
Range padded_range(double lo, double hi) {
  double span = hi - lo;
  if (!(span > 0.0)) span = std::max(std::abs(lo), 1.0) * 0.1;
  const double mid = 0.5 * (lo + hi);
  lo = std::min(lo, mid - 0.5 * span);
  hi = std::max(hi, mid + 0.5 * span);
  return {lo - 0.05 * span, hi + 0.05 * span};
}

using Series = std::vector<std::pair<double, double>>;

// A rectangular plotting area in SVG coordinates.
class Frame {
 public:
  Frame(double x0, double y0, double width, double height, Range xr, Range yr)
      : left_(x0 + kMarginLeft),
        top_(y0 + kMarginTop),
        right_(x0 + width - kMarginRight),
        bottom_(y0 + height - kMarginBottom),
        x0_(x0),
        y0_(y0),
        width_(width),
        xr_(xr),
        yr_(yr) {}

  double px(double x) const {
    return left_ + (x - xr_.lo) / (xr_.hi - xr_.lo) * (right_ - left_);
  }
  double py(double y) const {
    return bottom_ - (y - yr_.lo) / (yr_.hi - yr_.lo) * (bottom_ - top_);
  }

  void axes(std::ostream& out, const std::string& title,
            const std::string& x_label, const std::string& y_label) const {
    out << "<rect x=\"" << fixed2(left_) << "\" y=\"" << fixed2(top_)
        << "\" width=\"" << fixed2(right_ - left_) << "\" height=\""
        << fixed2(bottom_ - top_)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= kTicks; ++i) {
      const double fx = xr_.lo + (xr_.hi - xr_.lo) * i / kTicks;
      const double fy = yr_.lo + (yr_.hi - yr_.lo) * i / kTicks;
      out << "<line x1=\"" << fixed2(px(fx)) << "\" y1=\"" << fixed2(bottom_)
          << "\" x2=\"" << fixed2(px(fx)) << "\" y2=\"" << fixed2(bottom_ + 5)
          << "\" stroke=\"#333333\"/>\n";
      out << "<text x=\"" << fixed2(px(fx)) << "\" y=\"" << fixed2(bottom_ + 18)
          << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(fx)
          << "</text>\n";
      out << "<line x1=\"" << fixed2(left_ - 5) << "\" y1=\"" << fixed2(py(fy))
          << "\" x2=\"" << fixed2(left_) << "\" y2=\"" << fixed2(py(fy))
          << "\" stroke=\"#333333\"/>\n";
      out << "<text x=\"" << fixed2(left_ - 8) << "\" y=\"" << fixed2(py(fy) + 4)
          << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(fy)
          << "</text>\n";
    }
    out << "<text x=\"" << fixed2(x0_ + width_ / 2) << "\" y=\""
        << fixed2(y0_ + 22)
        << "\" font-size=\"14\" text-anchor=\"middle\">" << xml_escape(title)
        << "</text>\n";
    out << "<text x=\"" << fixed2((left_ + right_) / 2) << "\" y=\""
        << fixed2(bottom_ + 38)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << xml_escape(x_label)
        << "</text>\n";
    const double ly = (top_ + bottom_) / 2;
    const double lx = x0_ + 16;
    out << "<text x=\"" << fixed2(lx) << "\" y=\"" << fixed2(ly)
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 "
        << fixed2(lx) << " " << fixed2(ly) << ")\">" << xml_escape(y_label)
        << "</text>\n";
  }

  void polyline(std::ostream& out, const Series& s, const std::string& color,
                const std::string& extra) const {
    out << "<polyline " << extra << "fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << (i ? " " : "") << fixed2(px(s[i].first)) << ","
          << fixed2(py(s[i].second));
    }
    out << "\"/>\n";
  }

  void dot(std::ostream& out, double x, double y, double r,
           const std::string& color, const std::string& cls) const {
    out << "<circle class=\"" << cls << "\" cx=\"" << fixed2(px(x))
        << "\" cy=\"" << fixed2(py(y)) << "\" r=\"" << r << "\" fill=\""
        << color << "\"/>\n";
  }

 private:
  double left_, top_, right_, bottom_;
  double x0_, y0_, width_;
  Range xr_, yr_;
};

std::pair<Range, Range> ranges_of(const std::vector<Series>& all) {
  double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  bool first = true;
  for (const auto& s : all) {
    for (const auto& [x, y] : s) {
      if (first) {
        xlo = xhi = x;
        ylo = yhi = y;
        first = false;
      }
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  return {padded_range(xlo, xhi), padded_range(ylo, yhi)};
}

void svg_open(std::ostream& out, int width, int height) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path.string());
  out << text;
  if (!out) throw IoError("write failed", path.string());
}

const std::string& run_color(const PlotStyle& style, std::size_t i) {
  return style.run_colors[i % style.run_colors.size()];
}

}  // namespace

std::string run_csv_name(int sim_id, int repetition) {
  return "run_" + std::to_string(sim_id) + "_" + std::to_string(repetition) +
         ".csv";
}

std::string aggregate_csv_name(int sim_id) {
  return "aggregate_" + std::to_string(sim_id) + ".csv";
}

std::string information_plane_svg_name(int sim_id) {
  return "information_plane_" + std::to_string(sim_id) + ".svg";
}

std::string dynamics_svg_name(int sim_id) {
  return "dynamics_" + std::to_string(sim_id) + ".svg";
}

std::vector<std::filesystem::path> export_csv(
    const std::vector<RunTrajectory>& runs, const AggregateTrajectory& agg,
    const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory", out_dir.string());
  }
  std::vector<std::filesystem::path> written;
  for (const auto& run : runs) {
    std::ostringstream out;
    out << kRunCsvHeader << '\n';
    for (const auto& r : run.records) {
      out << r.iteration << ',' << format_real(r.objective) << ','
          << format_real(r.mi_xt) << ',' << format_real(r.entropy_t) << ','
          << format_real(r.weight_delta) << '\n';
    }
    auto path = out_dir / run_csv_name(run.sim_id, run.repetition);
    write_text_file(path, out.str());
    written.push_back(std::move(path));
  }
  std::ostringstream out;
  out << kAggregateCsvHeader << '\n';
  for (std::size_t i = 0; i < agg.length; ++i) {
    out << i << ',' << format_real(agg.mean_mi[i]) << ','
        << format_real(agg.mean_entropy[i]) << ','
        << format_real(agg.mean_objective[i]) << '\n';
  }
  auto path = out_dir / aggregate_csv_name(agg.sim_id);
  write_text_file(path, out.str());
  written.push_back(std::move(path));
  return written;
}

std::vector<IterationRecord> read_run_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading", path.string());
  std::string line;
  if (!std::getline(in, line) || line != kRunCsvHeader) {
    throw ParseError("bad run CSV header in " + path.string());
  }
  std::vector<IterationRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    IterationRecord r;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf%c", &r.iteration,
                    &r.objective, &r.mi_xt, &r.entropy_t, &r.weight_delta,
                    &tail) != 5) {
      throw ParseError("malformed run CSV row in " + path.string() + ": " +
                       line);
    }
    records.push_back(r);
  }
  return records;
}

std::string information_plane_svg(const AggregateTrajectory& agg,
                                  const PlotStyle& style) {
  if (agg.length < 1) throw ConfigError("aggregate trajectory is empty");
  Series points;
  for (std::size_t i = 0; i < agg.length; ++i) {
    points.emplace_back(agg.mean_mi[i], agg.mean_entropy[i]);
  }
  const auto [xr, yr] = ranges_of({points});
  const Frame frame(0, 0, style.width, style.height, xr, yr);
  std::ostringstream out;
  svg_open(out, style.width, style.height);
  frame.axes(out, "Information plane, simulation " + std::to_string(agg.sim_id),
             "I[X;T] (bits)", "H[T] (bits)");
  const std::string& color = style.run_colors.front();
  frame.polyline(out, points, color, "class=\"trajectory\" ");
  for (const auto& [x, y] : points) frame.dot(out, x, y, 2.5, color, "iterate");
  frame.dot(out, points.front().first, points.front().second, 6,
            style.start_marker_color, "start-marker");
  frame.dot(out, points.back().first, points.back().second, 6,
            style.end_marker_color, "end-marker");
  out << "</svg>\n";
  return out.str();
}

void render_information_plane(const AggregateTrajectory& agg,
                              const std::filesystem::path& out,
                              const PlotStyle& style) {
  write_text_file(out, information_plane_svg(agg, style));
}

std::string dynamics_panels_svg(const std::vector<RunTrajectory>& runs,
                                const PlotStyle& style) {
  if (runs.empty()) throw ConfigError("no runs to plot");
  struct Panel {
    std::string id;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
  };
  std::array<Panel, 4> panels{{
      {"a", "(a) Mutual information", "iteration", "I[X;T] (bits)", {}},
      {"b", "(b) Entropy", "iteration", "H[T] (bits)", {}},
      {"c", "(c) Weight change", "iteration", "||W_t - W_(t-1)||_F", {}},
      {"d", "(d) Information plane", "I[X;T] (bits)", "H[T] (bits)", {}},
  }};
  for (const auto& run : runs) {
    Series mi, h, dw, plane;
    for (const auto& r : run.records) {
      mi.emplace_back(r.iteration, r.mi_xt);
      h.emplace_back(r.iteration, r.entropy_t);
      dw.emplace_back(r.iteration, r.weight_delta);
      plane.emplace_back(r.mi_xt, r.entropy_t);
    }
    panels[0].series.push_back(std::move(mi));
    panels[1].series.push_back(std::move(h));
    panels[2].series.push_back(std::move(dw));
    panels[3].series.push_back(std::move(plane));
  }

  std::ostringstream out;
  svg_open(out, 2 * style.width, 2 * style.height);
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double x0 = static_cast<double>((p % 2) * style.width);
    const double y0 = static_cast<double>((p / 2) * style.height);
    const auto [xr, yr] = ranges_of(panel.series);
    const Frame frame(x0, y0, style.width, style.height, xr, yr);
    out << "<g class=\"panel\" id=\"panel-" << panel.id << "\">\n";
    frame.axes(out, panel.title, panel.x_label, panel.y_label);
    for (std::size_t r = 0; r < panel.series.size(); ++r) {
      frame.polyline(out, panel.series[r], run_color(style, r),
                     "class=\"run\" data-run=\"" +
                         std::to_string(runs[r].repetition) + "\" ");
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void render_dynamics_panels(const std::vector<RunTrajectory>& runs,
                            const std::filesystem::path& out,
                            const PlotStyle& style) {
  write_text_file(out, dynamics_panels_svg(runs, style));
}

}  // namespace sfinfo

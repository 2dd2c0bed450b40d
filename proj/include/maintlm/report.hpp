#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maintlm/stats.hpp"
#include "maintlm/trainer.hpp"

namespace maintlm {

// Drawing primitives for the static diagnostic plots. Coordinates are in
// canvas pixels with the origin at the top-left corner.
using Attrs = std::vector<std::pair<std::string, std::string>>;

struct LineElem {
  double x1, y1, x2, y2;
  std::string stroke;
  double width = 1.0;
  bool dashed = false;
  Attrs attrs;
};

struct PolylineElem {
  std::vector<std::pair<double, double>> points;
  std::string stroke;
  double width = 1.5;
  Attrs attrs;
};

struct CircleElem {
  double cx, cy, r;
  std::string fill;
  Attrs attrs;
};

struct RectElem {
  double x, y, w, h;
  std::string fill;
  Attrs attrs;
};

struct TextElem {
  double x, y;
  std::string text;
  std::string anchor = "start";
  double size = 12.0;
  Attrs attrs;
};

struct CommentElem {
  std::string text;
};

using PlotElement =
    std::variant<LineElem, PolylineElem, CircleElem, RectElem, TextElem, CommentElem>;

struct PlotDoc {
  double width = 800.0;
  double height = 600.0;
  std::vector<PlotElement> elements;
};

// SVG 1.1 serialization; byte-identical for identical documents.
std::string to_svg(const PlotDoc& doc);

// Nice-number ticks covering [lo, hi]: 5 to 8 values with a step from the
// 1/2/2.5/5 x 10^k family.
std::vector<double> nice_ticks(double lo, double hi);

// "R = 0.94" style label shared by the plots and any textual report.
std::string r_annotation(double r);

PlotDoc regression_plot(const std::vector<double>& targets, const std::vector<double>& outputs,
                        const std::string& label);

// Three log-scale MSE curves with a marker at best_epoch. A split whose MSEs
// are all NaN (empty split) is omitted.
PlotDoc performance_plot(const std::vector<EpochTrace>& traces, std::size_t best_epoch);

PlotDoc histogram_plot(const ErrorHistogram& hist);

inline constexpr std::string_view kSummaryHeader = "r,r2,adj_r2,se_estimate,n";
std::string export_summary(const RegressionSummary& summary);

}  // namespace maintlm

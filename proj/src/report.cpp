#include "maintlm/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "maintlm/error.hpp"
#include "maintlm/numfmt.hpp"

namespace maintlm {
namespace {

constexpr const char* kModule = "report";

// Palette.
constexpr const char* kTrainColor = "#1f77b4";
constexpr const char* kValColor = "#2ca02c";
constexpr const char* kTestColor = "#d62728";
constexpr const char* kZeroColor = "#ff7f0e";
constexpr const char* kBarColor = "#4c72b0";
constexpr const char* kIdentityColor = "#7f7f7f";
constexpr const char* kFitColor = "#000000";
constexpr const char* kAxisColor = "#333333";
constexpr const char* kPaletteComment =
    "palette: train=#1f77b4 val=#2ca02c test=#d62728 zero-error=#ff7f0e "
    "bars=#4c72b0 identity=#7f7f7f fit=#000000";

constexpr double kLeft = 80.0;
constexpr double kRight = 770.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 530.0;

std::string px(double v) { return format_fixed(v, 2); }

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void write_attrs(std::ostream& out, const Attrs& attrs) {
  for (const auto& [k, v] : attrs) out << ' ' << k << "=\"" << escape(v) << '"';
}

struct Axis {
  double lo, hi;          // data range
  double pix_lo, pix_hi;  // canvas range (pix_lo maps lo)
  double map(double v) const {
    if (hi == lo) return (pix_lo + pix_hi) / 2.0;
    return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
  }
};

std::string tick_label(double v, double step) {
  for (int decimals = 0; decimals <= 12; ++decimals) {
    const auto s = format_fixed(v, decimals);
    const auto back = parse_double(s);
    if (back && std::abs(*back - v) <= std::abs(step) * 1e-6) return s;
  }
  return format_double(v);
}

std::string log_tick_label(double exponent) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.3g", std::pow(10.0, exponent));
  return std::string(buf.data());
}

// Frame plus ticks, gridlines and labels along both axes.
template <typename XLabel, typename YLabel>
void draw_axes(PlotDoc& doc, const Axis& xa, const std::vector<double>& xticks, XLabel xlabel,
               const Axis& ya, const std::vector<double>& yticks, YLabel ylabel,
               const std::string& xtitle, const std::string& ytitle) {
  for (double t : xticks) {
    const double x = xa.map(t);
    doc.elements.push_back(LineElem{x, kTop, x, kBottom, "#e5e5e5", 1.0, false, {}});
    doc.elements.push_back(LineElem{x, kBottom, x, kBottom + 5.0, kAxisColor, 1.0, false, {}});
    doc.elements.push_back(TextElem{x, kBottom + 20.0, xlabel(t), "middle", 11.0, {}});
  }
  for (double t : yticks) {
    const double y = ya.map(t);
    doc.elements.push_back(LineElem{kLeft, y, kRight, y, "#e5e5e5", 1.0, false, {}});
    doc.elements.push_back(LineElem{kLeft - 5.0, y, kLeft, y, kAxisColor, 1.0, false, {}});
    doc.elements.push_back(TextElem{kLeft - 8.0, y + 4.0, ylabel(t), "end", 11.0, {}});
  }
  doc.elements.push_back(LineElem{kLeft, kBottom, kRight, kBottom, kAxisColor, 1.0, false, {}});
  doc.elements.push_back(LineElem{kLeft, kTop, kLeft, kBottom, kAxisColor, 1.0, false, {}});
  doc.elements.push_back(TextElem{(kLeft + kRight) / 2.0, kBottom + 45.0, xtitle, "middle", 13.0, {}});
  doc.elements.push_back(
      TextElem{20.0, (kTop + kBottom) / 2.0, ytitle, "middle", 13.0, {{"transform",
                                                                       "rotate(-90 20 " +
                                                                           px((kTop + kBottom) / 2.0) +
                                                                           ")"}}});
}

void add_title(PlotDoc& doc, const std::string& title) {
  doc.elements.push_back(TextElem{doc.width / 2.0, 28.0, title, "middle", 16.0, {}});
}

}  // namespace

std::string to_svg(const PlotDoc& doc) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(doc.width)
      << "\" height=\"" << px(doc.height) << "\" viewBox=\"0 0 " << px(doc.width) << ' '
      << px(doc.height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << px(doc.width) << "\" height=\"" << px(doc.height)
      << "\" fill=\"#ffffff\"/>\n";
  for (const auto& element : doc.elements) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, LineElem>) {
            out << "<line x1=\"" << px(e.x1) << "\" y1=\"" << px(e.y1) << "\" x2=\"" << px(e.x2)
                << "\" y2=\"" << px(e.y2) << "\" stroke=\"" << e.stroke << "\" stroke-width=\""
                << px(e.width) << '"';
            if (e.dashed) out << " stroke-dasharray=\"6 4\"";
            write_attrs(out, e.attrs);
            out << "/>\n";
          } else if constexpr (std::is_same_v<T, PolylineElem>) {
            out << "<polyline points=\"";
            for (std::size_t i = 0; i < e.points.size(); ++i) {
              if (i) out << ' ';
              out << px(e.points[i].first) << ',' << px(e.points[i].second);
            }
            out << "\" fill=\"none\" stroke=\"" << e.stroke << "\" stroke-width=\""
                << px(e.width) << '"';
            write_attrs(out, e.attrs);
            out << "/>\n";
          } else if constexpr (std::is_same_v<T, CircleElem>) {
            out << "<circle cx=\"" << px(e.cx) << "\" cy=\"" << px(e.cy) << "\" r=\"" << px(e.r)
                << "\" fill=\"" << e.fill << '"';
            write_attrs(out, e.attrs);
            out << "/>\n";
          } else if constexpr (std::is_same_v<T, RectElem>) {
            out << "<rect x=\"" << px(e.x) << "\" y=\"" << px(e.y) << "\" width=\"" << px(e.w)
                << "\" height=\"" << px(e.h) << "\" fill=\"" << e.fill << '"';
            write_attrs(out, e.attrs);
            out << "/>\n";
          } else if constexpr (std::is_same_v<T, TextElem>) {
            out << "<text x=\"" << px(e.x) << "\" y=\"" << px(e.y) << "\" text-anchor=\""
                << e.anchor << "\" font-family=\"sans-serif\" font-size=\"" << px(e.size)
                << '"';
            write_attrs(out, e.attrs);
            out << '>' << escape(e.text) << "</text>\n";
          } else {
            // "--" is not allowed inside an XML comment.
            std::string text = e.text;
            for (auto pos = text.find("--"); pos != std::string::npos; pos = text.find("--"))
              text.replace(pos, 2, "- ");
            out << "<!-- " << text << " -->\n";
          }
        },
        element);
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<double> nice_ticks(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw Error(kModule, ErrorKind::kInvalidArgument, "tick range must be finite with lo <= hi");
  }
  if (lo == hi) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double span = hi - lo;
  const int top = static_cast<int>(std::floor(std::log10(span)));
  constexpr std::array<double, 4> kMantissas = {1.0, 2.0, 2.5, 5.0};

  double best_step = 0.0;
  double best_first = 0.0;
  long long best_count = 0;
  long long best_distance = std::numeric_limits<long long>::max();
  for (int k = top + 1; k >= top - 2; --k) {
    for (auto m = kMantissas.rbegin(); m != kMantissas.rend(); ++m) {
      const double step = *m * std::pow(10.0, k);
      const double first = std::floor(lo / step);
      const double last = std::ceil(hi / step);
      const auto count = static_cast<long long>(last - first) + 1;
      const long long distance = count < 5 ? 5 - count : (count > 8 ? count - 8 : 0);
      // Largest step wins among equally good candidates.
      if (distance < best_distance) {
        best_distance = distance;
        best_step = step;
        best_first = first;
        best_count = count;
      }
    }
  }
  std::vector<double> ticks;
  ticks.reserve(static_cast<std::size_t>(best_count));
  for (long long i = 0; i < best_count; ++i) {
    ticks.push_back((best_first + static_cast<double>(i)) * best_step);
  }
  return ticks;
}

std::string r_annotation(double r) { return "R = " + format_fixed(r, 2); }

PlotDoc regression_plot(const std::vector<double>& targets, const std::vector<double>& outputs,
                        const std::string& label) {
  if (targets.size() != outputs.size()) {
    throw Error(kModule, ErrorKind::kLengthMismatch, "targets and outputs differ in length");
  }
  if (targets.empty()) {
    throw Error(kModule, ErrorKind::kEmptyInput, "regression plot needs at least one point");
  }
  double lo = targets[0], hi = targets[0];
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (double v : {targets[i], outputs[i]}) {
      if (!std::isfinite(v)) throw Error(kModule, ErrorKind::kNonFinite, "non-finite point");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const auto ticks = nice_ticks(lo, hi);
  const Axis xa{ticks.front(), ticks.back(), kLeft, kRight};
  const Axis ya{ticks.front(), ticks.back(), kBottom, kTop};
  const double step = ticks.size() > 1 ? ticks[1] - ticks[0] : 1.0;
  auto label_fn = [step](double t) { return tick_label(t, step); };

  PlotDoc doc;
  doc.elements.push_back(CommentElem{kPaletteComment});
  add_title(doc, "Regression: " + label);
  draw_axes(doc, xa, ticks, label_fn, ya, ticks, label_fn, "Target (days)", "Output (days)");

  doc.elements.push_back(LineElem{xa.map(xa.lo), ya.map(xa.lo), xa.map(xa.hi), ya.map(xa.hi),
                                  kIdentityColor, 1.5, true, {{"class", "identity"}}});

  std::string annotation = "R = undefined";
  try {
    annotation = r_annotation(pearson_r(targets, outputs));
  } catch (const Error&) {
    // Constant series or a single point: correlation does not exist.
  }
  if (targets.size() >= 3) {
    try {
      const auto fit = ols_fit(targets, outputs);
      doc.elements.push_back(LineElem{xa.map(xa.lo), ya.map(fit.intercept + fit.slope * xa.lo),
                                      xa.map(xa.hi), ya.map(fit.intercept + fit.slope * xa.hi),
                                      kFitColor, 1.5, false, {{"class", "fit"}}});
    } catch (const Error&) {
      // Constant targets: no fit line.
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    doc.elements.push_back(CircleElem{xa.map(targets[i]), ya.map(outputs[i]), 3.5, kTrainColor,
                                      {{"class", "point"}}});
  }
  doc.elements.push_back(TextElem{kLeft + 12.0, kTop + 22.0, annotation, "start", 14.0,
                                  {{"class", "r-annotation"}}});
  doc.elements.push_back(TextElem{kRight - 10.0, kBottom - 30.0, "- - output = target", "end",
                                  11.0, {}});
  doc.elements.push_back(TextElem{kRight - 10.0, kBottom - 14.0, "--- least-squares fit", "end",
                                  11.0, {}});
  return doc;
}

PlotDoc performance_plot(const std::vector<EpochTrace>& traces, std::size_t best_epoch) {
  if (traces.empty()) throw Error(kModule, ErrorKind::kEmptyInput, "no epoch traces to plot");
  if (best_epoch > traces.back().epoch) {
    throw Error(kModule, ErrorKind::kInvalidArgument, "best epoch outside the trace range");
  }

  struct Series {
    const char* name;
    const char* color;
    double EpochTrace::*field;
  };
  const std::array<Series, 3> series = {{{"Train", kTrainColor, &EpochTrace::mse_train},
                                         {"Validation", kValColor, &EpochTrace::mse_val},
                                         {"Test", kTestColor, &EpochTrace::mse_test}}};
  std::array<bool, 3> present{};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::size_t missing = 0;
    for (const auto& t : traces) {
      const double v = t.*series[s].field;
      if (std::isnan(v)) {
        ++missing;
        continue;
      }
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(kModule, ErrorKind::kInvalidArgument,
                    std::string("cannot log-scale nonpositive ") + series[s].name + " MSE");
      }
      lo = std::min(lo, std::log10(v));
      hi = std::max(hi, std::log10(v));
    }
    if (missing != 0 && missing != traces.size()) {
      throw Error(kModule, ErrorKind::kNonFinite,
                  std::string(series[s].name) + " MSE missing for some epochs");
    }
    present[s] = missing == 0;
  }
  if (!present[0] && !present[1] && !present[2]) {
    throw Error(kModule, ErrorKind::kEmptyInput, "no MSE series to plot");
  }

  const auto yticks = nice_ticks(lo, hi);
  const auto xticks =
      nice_ticks(0.0, std::max<double>(1.0, static_cast<double>(traces.back().epoch)));
  const Axis xa{xticks.front(), xticks.back(), kLeft, kRight};
  const Axis ya{yticks.front(), yticks.back(), kBottom, kTop};
  const double xstep = xticks[1] - xticks[0];

  PlotDoc doc;
  doc.elements.push_back(CommentElem{kPaletteComment});
  const auto& best = traces[best_epoch];
  if (present[1]) {
    add_title(doc, "Best validation performance is " + format_fixed(best.mse_val, 4) +
                       " at epoch " + std::to_string(best_epoch));
  } else {
    add_title(doc, "Training performance (no validation split)");
  }
  draw_axes(
      doc, xa, xticks, [xstep](double t) { return tick_label(t, xstep); }, ya, yticks,
      log_tick_label, "Epoch", "Mean squared error (log scale)");

  double legend_y = kTop + 18.0;
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (!present[s]) continue;
    PolylineElem line{{}, series[s].color, 1.8, {{"class", "mse"}, {"data-split", series[s].name}}};
    for (const auto& t : traces) {
      line.points.emplace_back(xa.map(static_cast<double>(t.epoch)),
                               ya.map(std::log10(t.*series[s].field)));
    }
    doc.elements.push_back(std::move(line));
    doc.elements.push_back(LineElem{kRight - 120.0, legend_y - 4.0, kRight - 95.0, legend_y - 4.0,
                                    series[s].color, 2.0, false, {}});
    doc.elements.push_back(TextElem{kRight - 90.0, legend_y, series[s].name, "start", 12.0, {}});
    legend_y += 18.0;
  }

  const double bx = xa.map(static_cast<double>(best_epoch));
  doc.elements.push_back(LineElem{bx, kTop, bx, kBottom, kAxisColor, 1.0, true,
                                  {{"class", "best"}, {"data-epoch", std::to_string(best_epoch)}}});
  doc.elements.push_back(TextElem{bx + 6.0, kTop + 14.0,
                                  "best validation at epoch " + std::to_string(best_epoch),
                                  "start", 12.0, {{"class", "best-label"}}});
  return doc;
}

PlotDoc histogram_plot(const ErrorHistogram& hist) {
  if (hist.counts.empty() || hist.bin_edges.size() != hist.counts.size() + 1) {
    throw Error(kModule, ErrorKind::kInvalidArgument, "malformed histogram");
  }
  const double lo = std::min(hist.bin_edges.front(), hist.zero_mark);
  const double hi = std::max(hist.bin_edges.back(), hist.zero_mark);
  const auto xticks = nice_ticks(lo, hi);
  const std::size_t max_count = *std::max_element(hist.counts.begin(), hist.counts.end());
  const auto yticks = nice_ticks(0.0, static_cast<double>(std::max<std::size_t>(max_count, 1)));
  const Axis xa{xticks.front(), xticks.back(), kLeft, kRight};
  const Axis ya{yticks.front(), yticks.back(), kBottom, kTop};
  const double xstep = xticks[1] - xticks[0];
  const double ystep = yticks[1] - yticks[0];

  PlotDoc doc;
  doc.elements.push_back(CommentElem{kPaletteComment});
  std::size_t total = 0;
  for (auto c : hist.counts) total += c;
  add_title(doc, "Error histogram with " + std::to_string(hist.counts.size()) + " bins");
  draw_axes(
      doc, xa, xticks, [xstep](double t) { return tick_label(t, xstep); }, ya, yticks,
      [ystep](double t) { return tick_label(t, ystep); }, "Error = target - output (days)",
      "Instances");

  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    double x0 = xa.map(hist.bin_edges[i]);
    double x1 = xa.map(hist.bin_edges[i + 1]);
    // Zero-width bins still need a visible bar.
    if (x1 - x0 < 4.0) {
      const double mid = (x0 + x1) / 2.0;
      x0 = mid - 2.0;
      x1 = mid + 2.0;
    }
    const double top = ya.map(static_cast<double>(hist.counts[i]));
    doc.elements.push_back(RectElem{x0, top, x1 - x0, kBottom - top, kBarColor,
                                    {{"class", "bar"},
                                     {"data-count", std::to_string(hist.counts[i])},
                                     {"stroke", "#ffffff"},
                                     {"stroke-width", "0.50"}}});
  }
  const double zx = xa.map(hist.zero_mark);
  doc.elements.push_back(LineElem{zx, kTop, zx, kBottom, kZeroColor, 2.0, false, {{"class", "zero"}}});
  doc.elements.push_back(
      TextElem{zx + 6.0, kTop + 14.0, "Zero error", "start", 12.0, {{"class", "zero-label"}}});
  doc.elements.push_back(TextElem{kRight, kTop + 14.0, "n = " + std::to_string(total), "end",
                                  12.0, {{"class", "total"}}});
  return doc;
}

std::string export_summary(const RegressionSummary& s) {
  std::ostringstream out;
  out << kSummaryHeader << '\n'
      << format_double(s.r) << ',' << format_double(s.r2) << ',' << format_double(s.adj_r2)
      << ',' << format_double(s.se_estimate) << ',' << s.n << '\n';
  return out.str();
}

}  // namespace maintlm

/*
 * Copyright 2026 The oindex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Run comparison, ranking, learning-curve charts and an early-stopping
// advisory built on the per-epoch penalty trace.

#ifndef OINDEX_REPORT_HPP_
#define OINDEX_REPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oi/core.hpp"
#include "oi/error.hpp"
#include "oi/format.hpp"

namespace oi {

// A labelled OI value. `normalized` is absent when only the raw total is
// known (for example, published scores without epoch counts).
struct RunScore {
  std::string label;
  double oi = 0.0;
  std::optional<double> normalized;
};

inline RunScore Score(std::string label, const OIResult& result) {
  return {std::move(label), result.total, result.normalized};
}

enum class Larger { kEqual, kBaseline, kVariant };

struct RunComparison {
  std::string baseline_label;
  std::string variant_label;
  double baseline_oi = 0.0;
  double variant_oi = 0.0;
  double delta = 0.0;                   // variant - baseline.
  std::optional<double> ratio;          // variant / baseline; absent if baseline is 0.
  std::optional<double> normalized_delta;
  Larger larger = Larger::kEqual;
};

inline RunComparison compare(const RunScore& baseline,
                             const RunScore& variant) {
  RunComparison c;
  c.baseline_label = baseline.label;
  c.variant_label = variant.label;
  c.baseline_oi = baseline.oi;
  c.variant_oi = variant.oi;
  c.delta = variant.oi - baseline.oi;
  if (baseline.oi > 0.0) c.ratio = variant.oi / baseline.oi;
  if (baseline.normalized && variant.normalized) {
    c.normalized_delta = *variant.normalized - *baseline.normalized;
  }
  if (variant.oi > baseline.oi) {
    c.larger = Larger::kVariant;
  } else if (baseline.oi > variant.oi) {
    c.larger = Larger::kBaseline;
  }
  return c;
}

struct RankEntry {
  std::string label;
  double oi = 0.0;

  friend bool operator==(const RankEntry&, const RankEntry&) = default;
};

struct Ranking {
  std::vector<RankEntry> entries;  // Descending OI; ties by label.
};

inline Ranking rank(std::span<const RunScore> scores) {
  if (scores.empty()) throw ConfigError("rank needs at least one run");
  std::set<std::string_view> labels;
  Ranking r;
  r.entries.reserve(scores.size());
  for (const RunScore& s : scores) {
    if (!labels.insert(s.label).second) {
      throw ConfigError("duplicate run label '" + s.label + "'");
    }
    r.entries.push_back({s.label, s.oi});
  }
  std::sort(r.entries.begin(), r.entries.end(),
            [](const RankEntry& a, const RankEntry& b) {
              if (a.oi != b.oi) return a.oi > b.oi;
              return a.label < b.label;
            });
  return r;
}

struct AugmentationPair {
  std::string baseline_label;
  std::string variant_label;
  double baseline_oi = 0.0;
  double variant_oi = 0.0;
  double reduction = 0.0;  // baseline - variant; positive when OI dropped.
  std::optional<double> relative_reduction;
  bool reduced = false;    // Strict: variant_oi < baseline_oi.
};

struct AugmentationSummary {
  std::vector<AugmentationPair> pairs;
  std::size_t reduced_count = 0;
};

// Each comparison is (no-augmentation baseline, augmented variant).
inline AugmentationSummary augmentation_effect(
    std::span<const RunComparison> comparisons) {
  if (comparisons.empty()) {
    throw ConfigError("augmentation_effect needs at least one pair");
  }
  AugmentationSummary s;
  for (const RunComparison& c : comparisons) {
    AugmentationPair p;
    p.baseline_label = c.baseline_label;
    p.variant_label = c.variant_label;
    p.baseline_oi = c.baseline_oi;
    p.variant_oi = c.variant_oi;
    p.reduction = -c.delta;
    if (c.baseline_oi > 0.0) p.relative_reduction = p.reduction / c.baseline_oi;
    p.reduced = c.variant_oi < c.baseline_oi;
    s.reduced_count += p.reduced ? 1 : 0;
    s.pairs.push_back(std::move(p));
  }
  return s;
}

enum class StopReason { kNoOverfitDetected, kSustainedPenaltyGrowth };

struct StopAdvice {
  std::optional<long long> suggested_epoch;
  StopReason reason = StopReason::kNoOverfitDetected;
  std::optional<long long> onset_epoch;
};

// Looks for the first streak of `patience` consecutive epochs whose penalty
// exceeds `threshold`; the streak's first epoch is both onset and
// suggested stopping point.
inline StopAdvice stop_advice(const OIResult& result, std::size_t patience,
                              double threshold) {
  if (patience < 1) throw ConfigError("patience must be >= 1");
  if (!(threshold >= 0.0)) throw ConfigError("threshold must be >= 0");
  std::size_t streak = 0;
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    streak = result.trace[i].penalty > threshold ? streak + 1 : 0;
    if (streak >= patience) {
      const long long onset = result.trace[i + 1 - streak].epoch;
      return {onset, StopReason::kSustainedPenaltyGrowth, onset};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Charts.

enum class Metric { kLoss, kAccuracy };
enum class ChartFormat { kSvg, kText };

inline constexpr std::size_t kDefaultPlotWindow = 10;
inline constexpr std::size_t kTextChartWidth = 80;

// Window of nullopt means the whole run.
using PlotWindow = std::optional<std::size_t>;

// The last `window` records of the run (the whole run if it is shorter).
inline std::span<const EpochRecord> SelectWindow(const TrainingRun& run,
                                                 PlotWindow window) {
  if (window && *window == 0) throw ConfigError("plot window must be >= 1");
  std::span<const EpochRecord> all(run.records);
  if (!window || *window >= all.size()) return all;
  return all.last(*window);
}

namespace internal {

struct Series {
  std::vector<long long> epochs;
  std::vector<double> train;
  std::vector<double> val;
  double lo = 0.0;
  double hi = 1.0;
};

inline Series ExtractSeries(std::span<const EpochRecord> records,
                            Metric metric) {
  Series s;
  for (const EpochRecord& r : records) {
    s.epochs.push_back(r.epoch);
    s.train.push_back(metric == Metric::kLoss ? r.train_loss : r.train_acc);
    s.val.push_back(metric == Metric::kLoss ? r.val_loss : r.val_acc);
  }
  const auto [tmin, tmax] = std::minmax_element(s.train.begin(), s.train.end());
  const auto [vmin, vmax] = std::minmax_element(s.val.begin(), s.val.end());
  s.lo = std::min(*tmin, *vmin);
  s.hi = std::max(*tmax, *vmax);
  if (s.hi - s.lo < 1e-12) {
    s.lo -= 0.5;
    s.hi += 0.5;
  } else {
    const double pad = 0.05 * (s.hi - s.lo);
    s.lo -= pad;
    s.hi += pad;
  }
  if (s.lo < 0.0) s.lo = 0.0;
  return s;
}

inline std::string_view MetricName(Metric m) {
  return m == Metric::kLoss ? "Loss" : "Accuracy";
}

inline std::string XmlEscape(std::string_view s) {
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

// "-0.000" would make otherwise identical charts differ.
inline std::string Coord(double v, int decimals) {
  std::string s = FormatFixed(v, decimals);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
    s.erase(0, 1);
  }
  return s;
}

inline std::string ChartTitle(const TrainingRun& run, Metric metric,
                              const Series& s) {
  std::string title(MetricName(metric));
  title += ": train vs validation, epochs ";
  title += std::to_string(s.epochs.front());
  if (s.epochs.size() > 1) title += "-" + std::to_string(s.epochs.back());
  if (!run.label.empty()) title = run.label + " - " + title;
  return title;
}

inline std::size_t TickStep(std::size_t n) {
  return n <= 20 ? 1 : (n + 9) / 10;
}

}  // namespace internal

inline std::string RenderSvg(const TrainingRun& run, Metric metric,
                             PlotWindow window = kDefaultPlotWindow) {
  ValidateCanonicalRun(run);
  const internal::Series s =
      internal::ExtractSeries(SelectWindow(run, window), metric);
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
  constexpr double kPlotW = kWidth - kLeft - kRight;
  constexpr double kPlotH = kHeight - kTop - kBottom;
  const std::size_t n = s.epochs.size();
  auto x_at = [&](std::size_t i) {
    return n == 1 ? kLeft + kPlotW / 2
                  : kLeft + kPlotW * static_cast<double>(i) /
                                static_cast<double>(n - 1);
  };
  auto y_at = [&](double v) {
    return kTop + kPlotH * (s.hi - v) / (s.hi - s.lo);
  };
  using internal::Coord;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" +
         internal::XmlEscape(internal::ChartTitle(run, metric, s)) +
         "</text>\n";

  // Axes.
  out += "<g stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + Coord(kLeft, 2) + "\" y1=\"" + Coord(kTop, 2) +
         "\" x2=\"" + Coord(kLeft, 2) + "\" y2=\"" + Coord(kTop + kPlotH, 2) +
         "\"/>\n";
  out += "<line x1=\"" + Coord(kLeft, 2) + "\" y1=\"" +
         Coord(kTop + kPlotH, 2) + "\" x2=\"" + Coord(kLeft + kPlotW, 2) +
         "\" y2=\"" + Coord(kTop + kPlotH, 2) + "\"/>\n";
  out += "</g>\n";

  // Y ticks.
  out += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  constexpr int kYTicks = 5;
  for (int t = 0; t < kYTicks; ++t) {
    const double v = s.lo + (s.hi - s.lo) * t / (kYTicks - 1);
    const std::string y = Coord(y_at(v), 2);
    out += "<line x1=\"" + Coord(kLeft - 5, 2) + "\" y1=\"" + y + "\" x2=\"" +
           Coord(kLeft, 2) + "\" y2=\"" + y + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + Coord(kLeft - 8, 2) + "\" y=\"" +
           Coord(y_at(v) + 4, 2) + "\" text-anchor=\"end\">" + Coord(v, 3) +
           "</text>\n";
  }
  // X ticks, one per epoch unless the window is long.
  const std::size_t step = internal::TickStep(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i % step != 0 && i + 1 != n) continue;
    const std::string x = Coord(x_at(i), 2);
    out += "<line x1=\"" + x + "\" y1=\"" + Coord(kTop + kPlotH, 2) +
           "\" x2=\"" + x + "\" y2=\"" + Coord(kTop + kPlotH + 5, 2) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + x + "\" y=\"" + Coord(kTop + kPlotH + 18, 2) +
           "\" text-anchor=\"middle\">" + std::to_string(s.epochs[i]) +
           "</text>\n";
  }
  out += "</g>\n";

  // Axis labels.
  out += "<text x=\"" + Coord(kLeft + kPlotW / 2, 2) + "\" y=\"" +
         Coord(kHeight - 15, 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">Epoch</text>\n";
  out += "<text x=\"18\" y=\"" + Coord(kTop + kPlotH / 2, 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " +
         Coord(kTop + kPlotH / 2, 2) + ")\">" +
         std::string(internal::MetricName(metric)) + "</text>\n";

  auto series = [&](const std::vector<double>& ys, std::string_view name,
                    std::string_view color) {
    std::string pts;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) pts += ' ';
      pts += Coord(x_at(i), 2) + "," + Coord(y_at(ys[i]), 2);
    }
    std::string g = "<g class=\"series-" + std::string(name) + "\">\n";
    g += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
      g += "<circle cx=\"" + Coord(x_at(i), 2) + "\" cy=\"" +
           Coord(y_at(ys[i]), 2) + "\" r=\"3\" fill=\"" + std::string(color) +
           "\"/>\n";
    }
    return g + "</g>\n";
  };
  out += series(s.train, "train", "#1f77b4");
  out += series(s.val, "validation", "#d62728");

  // Legend.
  const double lx = kLeft + kPlotW - 130;
  out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<line x1=\"" + Coord(lx, 2) + "\" y1=\"52\" x2=\"" +
         Coord(lx + 20, 2) +
         "\" y2=\"52\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  out += "<text x=\"" + Coord(lx + 26, 2) + "\" y=\"56\">train</text>\n";
  out += "<line x1=\"" + Coord(lx, 2) + "\" y1=\"70\" x2=\"" +
         Coord(lx + 20, 2) +
         "\" y2=\"70\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  out += "<text x=\"" + Coord(lx + 26, 2) + "\" y=\"74\">validation</text>\n";
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

// Fixed-width terminal chart. Every line is exactly kTextChartWidth columns.
inline std::string RenderText(const TrainingRun& run, Metric metric,
                              PlotWindow window = kDefaultPlotWindow) {
  ValidateCanonicalRun(run);
  const internal::Series s =
      internal::ExtractSeries(SelectWindow(run, window), metric);
  constexpr std::size_t kGutter = 10;  // "  12.345 |"
  constexpr std::size_t kPlotW = kTextChartWidth - kGutter;
  constexpr std::size_t kRows = 15;
  const std::size_t n = s.epochs.size();

  auto col_at = [&](std::size_t i) -> std::size_t {
    if (n == 1) return kPlotW / 2;
    return static_cast<std::size_t>(std::lround(
        static_cast<double>(i) * static_cast<double>(kPlotW - 1) /
        static_cast<double>(n - 1)));
  };
  auto row_at = [&](double v) -> std::size_t {
    const double frac = (s.hi - v) / (s.hi - s.lo);
    const long r = std::lround(frac * static_cast<double>(kRows - 1));
    return static_cast<std::size_t>(std::clamp(r, 0L, long{kRows - 1}));
  };

  std::vector<std::string> grid(kRows, std::string(kPlotW, ' '));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = col_at(i);
    grid[row_at(s.train[i])][c] = 'T';
    char& cell = grid[row_at(s.val[i])][c];
    cell = cell == 'T' ? '*' : 'V';
  }

  auto pad = [](std::string line) {
    if (line.size() > kTextChartWidth) line.resize(kTextChartWidth);
    line.resize(kTextChartWidth, ' ');
    return line + "\n";
  };

  std::string out = pad(internal::ChartTitle(run, metric, s));
  for (std::size_t r = 0; r < kRows; ++r) {
    std::string label(kGutter - 2, ' ');
    if (r == 0 || r == kRows / 2 || r == kRows - 1) {
      const double v = s.hi - (s.hi - s.lo) * static_cast<double>(r) /
                                  static_cast<double>(kRows - 1);
      std::string num = internal::Coord(v, 3);
      if (num.size() < label.size()) {
        label.replace(label.size() - num.size(), num.size(), num);
      }
    }
    out += pad(label + " |" + grid[r]);
  }
  out += pad(std::string(kGutter - 1, ' ') + "+" + std::string(kPlotW, '-'));

  std::string ticks(kTextChartWidth, ' ');
  std::size_t next_free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string lab = std::to_string(s.epochs[i]);
    const std::size_t center = kGutter + col_at(i);
    std::size_t start = center >= lab.size() / 2 ? center - lab.size() / 2 : 0;
    if (start + lab.size() > kTextChartWidth) {
      start = kTextChartWidth - lab.size();
    }
    if (start < next_free) continue;
    ticks.replace(start, lab.size(), lab);
    next_free = start + lab.size() + 1;
  }
  out += pad(ticks);
  out += pad(std::string(kGutter, ' ') + "epoch    T = train   V = validation"
             "   * = both");
  return out;
}

inline std::string plot(const TrainingRun& run, Metric metric,
                        PlotWindow window = kDefaultPlotWindow,
                        ChartFormat format = ChartFormat::kSvg) {
  return format == ChartFormat::kSvg ? RenderSvg(run, metric, window)
                                     : RenderText(run, metric, window);
}

}  // namespace oi

#endif  // OINDEX_REPORT_HPP_

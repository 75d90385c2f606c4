#pragma once

// Histogram / fitted-normal harness and the distribution diagnostics used to
// judge the generator output: moments, Pearson chi-square, lag correlation.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lmprng/errors.hpp"

namespace lmprng {

template <typename T>
concept Sample = std::integral<T> || std::floating_point<T>;

struct Moments {
  double mean = 0.0;
  double std = 0.0;  // population
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

namespace detail {

// Running central moments (Terriberry's one-pass update).
struct MomentAccumulator {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;

  void add(double x) noexcept {
    const double n1 = static_cast<double>(n);
    ++n;
    const double nn = static_cast<double>(n);
    const double delta = x - mean;
    const double delta_n = delta / nn;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean += delta_n;
    m4 += term1 * delta_n2 * (nn * nn - 3 * nn + 3) + 6 * delta_n2 * m2 - 4 * delta_n * m3;
    m3 += term1 * delta_n * (nn - 2) - 3 * delta_n * m2;
    m2 += term1;
  }

  double variance() const noexcept { return n == 0 ? 0.0 : std::max(0.0, m2 / static_cast<double>(n)); }
};

template <Sample T>
MomentAccumulator accumulate(std::span<const T> values) noexcept {
  MomentAccumulator acc;
  for (T v : values) acc.add(static_cast<double>(v));
  return acc;
}

}  // namespace detail

/// Mean, population std, skewness m3/std^3 and excess kurtosis m4/std^4 - 3.
/// Throws DegenerateInput for fewer than 4 values or zero variance.
template <Sample T>
Moments moments(std::span<const T> values) {
  if (values.size() < 4) throw DegenerateInput("moments need at least 4 values");
  const auto acc = detail::accumulate(values);
  const double var = acc.variance();
  if (!(var > 0.0)) throw DegenerateInput("skewness and kurtosis are undefined for constant input");
  const double n = static_cast<double>(acc.n);
  return Moments{acc.mean, std::sqrt(var), (acc.m3 / n) / std::pow(var, 1.5), (acc.m4 / n) / (var * var) - 3.0};
}

struct HistogramReport {
  std::vector<double> bin_edges;     // bins + 1, strictly increasing
  std::vector<std::size_t> counts;   // bins
  std::size_t n = 0;
  std::size_t below_range = 0;  // clamped into the first bin
  std::size_t above_range = 0;  // clamped into the last bin
  double mean = 0.0;
  double std = 0.0;
  std::optional<double> skewness;  // empty when undefined
  std::optional<double> excess_kurtosis;

  std::size_t bins() const noexcept { return counts.size(); }
  double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
  /// count / (n * width), so the bars integrate to one.
  double density(std::size_t i) const { return static_cast<double>(counts[i]) / (static_cast<double>(n) * bin_width(i)); }
  std::size_t modal_bin() const;
};

std::vector<double> equal_width_edges(std::size_t bins, double lo, double hi);

/// Equal-width histogram over [lo, hi]; out-of-range values land in the
/// nearest edge bin and are tallied. Moments come from the raw values.
template <Sample T>
HistogramReport histogram(std::span<const T> values, std::size_t bins = 10, double lo = 0.0, double hi = 65535.0) {
  if (values.empty()) throw EmptyInput("histogram of an empty stream");
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  if (!(lo < hi)) throw std::invalid_argument("histogram range requires lo < hi");

  HistogramReport r;
  r.bin_edges = equal_width_edges(bins, lo, hi);
  r.counts.assign(bins, 0);
  r.n = values.size();
  const double width = (hi - lo) / static_cast<double>(bins);
  for (T raw : values) {
    const double v = static_cast<double>(raw);
    std::size_t idx;
    if (v < lo) {
      ++r.below_range;
      idx = 0;
    } else if (v > hi) {
      ++r.above_range;
      idx = bins - 1;
    } else {
      idx = std::min(bins - 1, static_cast<std::size_t>((v - lo) / width));
      // Guard against rounding at interior edges.
      while (idx > 0 && v < r.bin_edges[idx]) --idx;
      while (idx + 1 < bins && v >= r.bin_edges[idx + 1]) ++idx;
    }
    ++r.counts[idx];
  }

  const auto acc = detail::accumulate(values);
  r.mean = acc.mean;
  r.std = std::sqrt(acc.variance());
  if (values.size() >= 4 && acc.variance() > 0.0) {
    const Moments m = moments(values);
    r.skewness = m.skewness;
    r.excess_kurtosis = m.excess_kurtosis;
  }
  return r;
}

/// `points` equally spaced (x, pdf) pairs across the histogram range, using
/// the report's mean and std. Throws DegenerateInput if std == 0.
std::vector<std::pair<double, double>> fit_normal_overlay(const HistogramReport& report, std::size_t points = 200);

struct GofResult {
  double statistic = 0.0;
  int dof = 1;
  bool reject_at_1pct = false;
  double critical_value = 0.0;
  std::size_t effective_bins = 0;
};

/// Pearson sum (O - E)^2 / E.
double chi_square_statistic(std::span<const double> observed, std::span<const double> expected);

/// Goodness of fit against the normal with the report's mean/std. The edge
/// bins take the normal tails; bins with expected count < 5 are folded in
/// from the outside. dof = effective bins - 3. Throws InsufficientBins when
/// fewer than 4 bins survive, DegenerateInput if std == 0.
GofResult chi_square_gof(const HistogramReport& report);

/// Pearson correlation of x[0..n-lag) with x[lag..n). Requires n > lag + 1
/// and non-constant segments.
template <Sample T>
double autocorr(std::span<const T> values, std::size_t lag) {
  if (values.size() <= lag + 1) throw DegenerateInput("autocorrelation needs more than lag + 1 values");
  const std::size_t m = values.size() - lag;
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    ma += static_cast<double>(values[i]);
    mb += static_cast<double>(values[i + lag]);
  }
  ma /= static_cast<double>(m);
  mb /= static_cast<double>(m);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = static_cast<double>(values[i]) - ma;
    const double b = static_cast<double>(values[i + lag]) - mb;
    sab += a * b;
    saa += a * a;
    sbb += b * b;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw DegenerateInput("autocorrelation is undefined for constant input");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

// CSV serialization. Reals use 9 significant digits.
void write_histogram_csv(std::ostream& os, const HistogramReport& report);
void write_summary_csv(std::ostream& os, const HistogramReport& report, const std::optional<GofResult>& gof);
void write_overlay_csv(std::ostream& os, std::span<const std::pair<double, double>> curve);

}  // namespace lmprng

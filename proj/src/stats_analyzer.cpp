#include "lmprng/stats_analyzer.hpp"

#include <fmt/format.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <deque>
#include <ostream>

#include "lmprng/reference_models.hpp"

namespace lmprng {

std::size_t HistogramReport::modal_bin() const {
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::vector<double> equal_width_edges(std::size_t bins, double lo, double hi) {
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  edges.back() = hi;
  return edges;
}

std::vector<std::pair<double, double>> fit_normal_overlay(const HistogramReport& report, std::size_t points) {
  if (!(report.std > 0.0)) throw DegenerateInput("cannot fit a normal to zero-variance data");
  if (points < 2) throw std::invalid_argument("overlay needs at least 2 points");
  const GaussParams g{report.mean, report.std};
  const double lo = report.bin_edges.front();
  const double hi = report.bin_edges.back();
  std::vector<std::pair<double, double>> curve;
  curve.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    curve.emplace_back(x, normal_pdf(x, g));
  }
  return curve;
}

double chi_square_statistic(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw std::invalid_argument("observed/expected size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("expected counts must be positive");
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

GofResult chi_square_gof(const HistogramReport& report) {
  if (!(report.std > 0.0)) throw DegenerateInput("cannot fit a normal to zero-variance data");
  constexpr double kMinExpected = 5.0;
  const GaussParams g{report.mean, report.std};
  const double n = static_cast<double>(report.n);
  const std::size_t bins = report.bins();

  struct Cell {
    double observed;
    double expected;
  };
  std::deque<Cell> cells;
  for (std::size_t i = 0; i < bins; ++i) {
    const double lo_cdf = i == 0 ? 0.0 : normal_cdf(report.bin_edges[i], g);
    const double hi_cdf = i + 1 == bins ? 1.0 : normal_cdf(report.bin_edges[i + 1], g);
    cells.push_back({static_cast<double>(report.counts[i]), n * (hi_cdf - lo_cdf)});
  }

  auto sparse = [&] {
    return std::any_of(cells.begin(), cells.end(), [](const Cell& c) { return c.expected < kMinExpected; });
  };
  while (cells.size() >= 2 && sparse()) {
    if (cells.front().expected <= cells.back().expected) {
      const Cell c = cells.front();
      cells.pop_front();
      cells.front().observed += c.observed;
      cells.front().expected += c.expected;
    } else {
      const Cell c = cells.back();
      cells.pop_back();
      cells.back().observed += c.observed;
      cells.back().expected += c.expected;
    }
  }
  if (cells.size() < 4) {
    throw InsufficientBins(fmt::format("only {} effective bins after merging; need at least 4", cells.size()));
  }

  std::vector<double> obs, exp;
  for (const Cell& c : cells) {
    obs.push_back(c.observed);
    exp.push_back(c.expected);
  }
  GofResult r;
  r.statistic = chi_square_statistic(obs, exp);
  r.effective_bins = cells.size();
  r.dof = static_cast<int>(cells.size()) - 3;
  r.critical_value = boost::math::quantile(boost::math::chi_squared(r.dof), 0.99);
  r.reject_at_1pct = r.statistic > r.critical_value;
  return r;
}

static std::string real(double v) { return fmt::format("{:.9g}", v); }

void write_histogram_csv(std::ostream& os, const HistogramReport& report) {
  os << "lo,hi,count,density\n";
  for (std::size_t i = 0; i < report.bins(); ++i) {
    os << real(report.bin_edges[i]) << ',' << real(report.bin_edges[i + 1]) << ',' << report.counts[i] << ','
       << real(report.density(i)) << '\n';
  }
}

void write_summary_csv(std::ostream& os, const HistogramReport& report, const std::optional<GofResult>& gof) {
  auto opt = [](const std::optional<double>& v) { return v ? real(*v) : std::string("undefined"); };
  os << "key,value\n";
  os << "n," << report.n << '\n';
  os << "mean," << real(report.mean) << '\n';
  os << "std," << real(report.std) << '\n';
  os << "skewness," << opt(report.skewness) << '\n';
  os << "excess_kurtosis," << opt(report.excess_kurtosis) << '\n';
  os << "chi2," << (gof ? real(gof->statistic) : std::string("undefined")) << '\n';
  os << "dof," << (gof ? std::to_string(gof->dof) : std::string("undefined")) << '\n';
  os << "reject_at_1pct," << (gof ? (gof->reject_at_1pct ? "true" : "false") : "undefined") << '\n';
  os << "below_range," << report.below_range << '\n';
  os << "above_range," << report.above_range << '\n';
  os << "modal_bin," << report.modal_bin() << '\n';
}

void write_overlay_csv(std::ostream& os, std::span<const std::pair<double, double>> curve) {
  os << "x,density\n";
  for (const auto& [x, d] : curve) os << real(x) << ',' << real(d) << '\n';
}

}  // namespace lmprng

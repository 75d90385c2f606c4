#include "lmprng/reference_models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lmprng {

double poc_map_step(double x, double r) noexcept { return r * x * (65535.0 - x) / 65535.0; }

PocSeries poc_series(double x0, std::size_t n) {
  PocSeries s;
  if (n == 0) return s;
  s.map_states.resize(n);
  s.rolling.resize(n);
  s.map_states[0] = x0;
  s.rolling[0] = x0;
  for (std::size_t i = 1; i < n; ++i) {
    s.map_states[i] = poc_map_step(s.map_states[i - 1]);
    s.rolling[i] = (40.0 * s.rolling[i - 1] + 10.0 * s.map_states[i]) / 50.0;
  }
  return s;
}

ValueStream poc_rolling_series(double x0, std::size_t n) {
  const PocSeries s = poc_series(x0, n);
  ValueStream out;
  out.reserve(n);
  for (double v : s.rolling) out.push_back(static_cast<std::uint16_t>(std::floor(v)));
  return out;
}

static void check_sigma(const GaussParams& p) {
  if (!(p.sigma > 0.0)) throw std::invalid_argument("normal distribution requires sigma > 0");
}

double normal_pdf(double x, const GaussParams& p) {
  check_sigma(p);
  const double z = (x - p.mu) / p.sigma;
  return (1.0 / (p.sigma * std::sqrt(2.0 * std::numbers::pi))) * std::exp(-0.5 * z * z);
}

double normal_cdf(double x, const GaussParams& p) {
  check_sigma(p);
  return 0.5 * std::erfc(-(x - p.mu) / (p.sigma * std::numbers::sqrt2));
}

}  // namespace lmprng

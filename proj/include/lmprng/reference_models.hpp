#pragma once

// Double-precision replica of the floating-point proof of concept: the scaled
// map without flooring, the 40/10 rolling average floored only at the end,
// and the closed-form normal density. Used as the oracle for the
// distributional checks.

#include <cstddef>
#include <vector>

#include "lmprng/fixed_map.hpp"

namespace lmprng {

/// r*x*(65535-x)/65535, evaluated left to right in double.
double poc_map_step(double x, double r = 4.0) noexcept;

struct PocSeries {
  std::vector<double> map_states;  // stored_x[1..n], stored_x[1] = x0
  std::vector<double> rolling;     // unfloored rolling averages
};

/// Both PoC arrays for n >= 1 elements; the first element of each is x0.
PocSeries poc_series(double x0, std::size_t n);

/// The PoC output: rolling averages floored after the loop.
ValueStream poc_rolling_series(double x0, std::size_t n);

struct GaussParams {
  double mu = 0.0;
  double sigma = 1.0;
};

/// Throws std::invalid_argument if sigma <= 0.
double normal_pdf(double x, const GaussParams& p);

/// Standard normal CDF of (x - mu) / sigma.
double normal_cdf(double x, const GaussParams& p);

}  // namespace lmprng

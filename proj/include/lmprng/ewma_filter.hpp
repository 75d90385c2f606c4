#pragma once

// Integer EWMA: avg' = floor((old_w*avg + new_w*x) / denom), default 40/10/50,
// so the new sample carries weight 0.2.

#include <cstdint>

#include "lmprng/fixed_map.hpp"

namespace lmprng {

class EwmaWeights {
 public:
  /// Throws std::invalid_argument unless all are positive and old_w + new_w == denom.
  EwmaWeights(std::uint32_t old_w = 40, std::uint32_t new_w = 10, std::uint32_t denom = 50);

  std::uint32_t old_w() const noexcept { return old_w_; }
  std::uint32_t new_w() const noexcept { return new_w_; }
  std::uint32_t denom() const noexcept { return denom_; }

  /// Weight on the new sample, new_w / denom.
  double alpha() const noexcept { return static_cast<double>(new_w_) / denom_; }

  bool operator==(const EwmaWeights&) const = default;

 private:
  std::uint32_t old_w_;
  std::uint32_t new_w_;
  std::uint32_t denom_;
};

struct EwmaState {
  std::uint16_t avg = 0;
};

constexpr EwmaState ewma_reset(FixedSample seed) noexcept { return EwmaState{seed.value}; }

/// Truncating update; the result lies between avg and xt.
EwmaState ewma_step(EwmaState state, FixedSample xt, const EwmaWeights& w = EwmaWeights{}) noexcept;

}  // namespace lmprng

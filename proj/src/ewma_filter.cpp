#include "lmprng/ewma_filter.hpp"

#include <stdexcept>

namespace lmprng {

EwmaWeights::EwmaWeights(std::uint32_t old_w, std::uint32_t new_w, std::uint32_t denom)
    : old_w_(old_w), new_w_(new_w), denom_(denom) {
  if (old_w == 0 || new_w == 0 || denom == 0) {
    throw std::invalid_argument("EWMA weights must be strictly positive");
  }
  if (static_cast<std::uint64_t>(old_w) + new_w != denom) {
    throw std::invalid_argument("EWMA weights must satisfy old_w + new_w == denom");
  }
}

EwmaState ewma_step(EwmaState state, FixedSample xt, const EwmaWeights& w) noexcept {
  const std::uint64_t num = std::uint64_t{w.old_w()} * state.avg + std::uint64_t{w.new_w()} * xt.value;
  return EwmaState{static_cast<std::uint16_t>(num / w.denom())};
}

}  // namespace lmprng

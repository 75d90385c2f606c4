#include "lmprng/fixed_map.hpp"

#include <stdexcept>
#include <string>

namespace lmprng {

FixedSample FixedSample::checked(std::int64_t v) {
  if (v < 0 || v > static_cast<std::int64_t>(kScale)) {
    throw std::out_of_range("sample " + std::to_string(v) + " outside [0, 65535]");
  }
  return FixedSample{static_cast<std::uint16_t>(v)};
}

MapParams::MapParams(int r, Rounding rounding) : r_(r), rounding_(rounding) {
  if (r < 1 || r > 4) {
    throw std::invalid_argument("map parameter r must be an integer in [1, 4], got " + std::to_string(r));
  }
}

WideProduct wide_product(FixedSample x, const MapParams& params) noexcept {
  // Computed wide, then wrapped like the 32-bit wire.
  const std::uint64_t xv = x.value;
  const std::uint64_t p = static_cast<std::uint64_t>(params.r()) * xv * (kScale - xv);
  return WideProduct{static_cast<std::uint32_t>(p)};
}

FixedSample lmap_step(FixedSample x, const MapParams& params) {
  if (params.rounding() != Rounding::HardwareRound) {
    throw std::invalid_argument("lmap_step emulates the hardware map only; use poc_map_step for float semantics");
  }
  const std::uint32_t biased = wide_product(x, params).value + std::uint32_t{32767};  // wraps mod 2^32
  return FixedSample{static_cast<std::uint16_t>(biased / kScale)};
}

std::vector<FixedSample> lmap_trajectory(FixedSample seed, const MapParams& params, std::size_t n) {
  std::vector<FixedSample> out;
  out.reserve(n);
  FixedSample s = seed;
  for (std::size_t i = 0; i < n; ++i) {
    s = lmap_step(s, params);
    out.push_back(s);
  }
  return out;
}

}  // namespace lmprng

#pragma once

// Fixed-point logistic map, bit-exact with a 16-bit state / 32-bit product
// hardware datapath: x' = (r*x*(65535-x) + 32767) / 65535.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lmprng {

inline constexpr std::uint32_t kScale = 65535;

/// A state value in [0, 65535]; x in [0, 1] scaled by 65535.
struct FixedSample {
  std::uint16_t value = 0;

  constexpr FixedSample() = default;
  constexpr explicit FixedSample(std::uint16_t v) : value(v) {}

  /// Range-checked construction; throws std::out_of_range outside [0, 65535].
  static FixedSample checked(std::int64_t v);

  friend constexpr auto operator<=>(FixedSample, FixedSample) = default;
};

/// A stream of 16-bit generator outputs.
using ValueStream = std::vector<std::uint16_t>;

enum class Rounding { HardwareRound, PocFloat };

/// Map parameter. Only integer r in [1, 4] is representable on the 8-bit
/// port without the 32-bit product overflowing; r = 4 is the chaotic one.
class MapParams {
 public:
  explicit MapParams(int r = 4, Rounding rounding = Rounding::HardwareRound);

  int r() const noexcept { return r_; }
  Rounding rounding() const noexcept { return rounding_; }

 private:
  int r_;
  Rounding rounding_;
};

/// The 32-bit intermediate r*x*(65535-x), wrapped modulo 2^32.
struct WideProduct {
  std::uint32_t value = 0;
};

WideProduct wide_product(FixedSample x, const MapParams& params) noexcept;

/// One step of the hardware map. Requires params.rounding() == HardwareRound.
FixedSample lmap_step(FixedSample x, const MapParams& params = MapParams{});

/// [s_1, ..., s_n] with s_1 = lmap_step(seed).
std::vector<FixedSample> lmap_trajectory(FixedSample seed, const MapParams& params, std::size_t n);

}  // namespace lmprng

#pragma once

// End-to-end generator (seed sanitization, map -> EWMA feedback) and cycle
// diagnostics for the finite 16-bit map.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lmprng/ewma_filter.hpp"
#include "lmprng/fixed_map.hpp"

namespace lmprng {

enum class Semantics { Hardware, Poc };

/// What to do when the running map state reaches the absorbing value 0.
/// Faithful keeps iterating (as the hardware does); PerturbToOne replaces the
/// state with 1 before the next step.
enum class ZeroPolicy { Faithful, PerturbToOne };

struct GeneratorConfig {
  std::uint16_t seed = 1;  // raw, before sanitization
  std::size_t n = 0;
  Semantics semantics = Semantics::Hardware;
  ZeroPolicy zero_policy = ZeroPolicy::Faithful;
  EwmaWeights weights{};  // hardware path only
};

/// A raw seed of 0 becomes 1; everything else passes through.
constexpr FixedSample sanitize_seed(std::uint16_t raw) noexcept {
  return FixedSample{raw == 0 ? std::uint16_t{1} : raw};
}

struct GeneratorTrace {
  ValueStream outputs;              // emitted EWMA values
  std::vector<double> map_states;   // map state after each step
  std::size_t zero_perturbations = 0;
};

/// n EWMA outputs. The bare seed is never emitted; the first value already
/// includes one map step. Throws std::invalid_argument for Poc semantics
/// with non-default weights.
ValueStream generate(const GeneratorConfig& config);

/// Like generate(), also returning the map states and perturbation count.
GeneratorTrace generate_traced(const GeneratorConfig& config);

struct CycleReport {
  std::uint16_t seed = 0;
  std::size_t tail_len = 0;   // steps before the orbit enters its cycle
  std::size_t cycle_len = 0;  // period, >= 1
  bool entered_zero = false;
  std::uint16_t cycle_entry = 0;  // first state of the orbit that lies on the cycle
};

/// Brent's cycle detection on the hardware map orbit of seed.
CycleReport find_cycle(FixedSample seed, const MapParams& params = MapParams{});

struct CycleSummary {
  std::uint16_t representative = 0;  // smallest state on the cycle
  std::size_t cycle_len = 0;
  std::size_t basin_size = 0;
};

struct CensusTable {
  std::vector<CycleReport> per_seed;  // indexed by seed, 65536 entries
  std::vector<CycleSummary> cycles;   // basin size descending, then representative ascending
  double zero_basin_fraction = 0.0;

  std::size_t total_seeds() const noexcept { return per_seed.size(); }
};

/// Runs find_cycle for every seed in [0, 65535]. The result does not depend
/// on the worker count.
CensusTable cycle_census(const MapParams& params = MapParams{}, unsigned workers = 1);

}  // namespace lmprng

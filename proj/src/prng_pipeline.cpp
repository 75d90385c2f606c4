#include "lmprng/prng_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lmprng/reference_models.hpp"

namespace lmprng {

namespace {

GeneratorTrace generate_hardware(const GeneratorConfig& config) {
  GeneratorTrace t;
  t.outputs.reserve(config.n);
  t.map_states.reserve(config.n);

  const MapParams params{4};
  FixedSample s = sanitize_seed(config.seed);
  EwmaState ewma = ewma_reset(s);
  for (std::size_t i = 0; i < config.n; ++i) {
    if (config.zero_policy == ZeroPolicy::PerturbToOne && s.value == 0) {
      s = FixedSample{1};
      ++t.zero_perturbations;
    }
    s = lmap_step(s, params);
    ewma = ewma_step(ewma, s, config.weights);
    t.map_states.push_back(s.value);
    t.outputs.push_back(ewma.avg);
  }
  return t;
}

GeneratorTrace generate_poc(const GeneratorConfig& config) {
  if (config.weights != EwmaWeights{}) {
    throw std::invalid_argument("PoC semantics use fixed 40/10/50 weights");
  }
  GeneratorTrace t;
  const double x0 = sanitize_seed(config.seed).value;

  if (config.zero_policy == ZeroPolicy::Faithful) {
    const PocSeries s = poc_series(x0, config.n + 1);
    const ValueStream floored = poc_rolling_series(x0, config.n + 1);
    t.map_states.assign(s.map_states.begin() + 1, s.map_states.end());
    t.outputs.assign(floored.begin() + 1, floored.end());
    return t;
  }

  t.outputs.reserve(config.n);
  t.map_states.reserve(config.n);
  double x = x0;
  double avg = x0;
  for (std::size_t i = 0; i < config.n; ++i) {
    if (x == 0.0) {
      x = 1.0;
      ++t.zero_perturbations;
    }
    x = poc_map_step(x);
    avg = (40.0 * avg + 10.0 * x) / 50.0;
    t.map_states.push_back(x);
    t.outputs.push_back(static_cast<std::uint16_t>(std::floor(avg)));
  }
  return t;
}

}  // namespace

GeneratorTrace generate_traced(const GeneratorConfig& config) {
  return config.semantics == Semantics::Hardware ? generate_hardware(config) : generate_poc(config);
}

ValueStream generate(const GeneratorConfig& config) { return generate_traced(config).outputs; }

CycleReport find_cycle(FixedSample seed, const MapParams& params) {
  // Brent: grow a power-of-two window until the hare meets the tortoise.
  std::size_t power = 1;
  std::size_t lam = 1;
  FixedSample tortoise = seed;
  FixedSample hare = lmap_step(seed, params);
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = lmap_step(hare, params);
    ++lam;
  }

  // Tail length: advance a second pointer lam steps ahead, then walk both.
  std::size_t mu = 0;
  tortoise = seed;
  hare = seed;
  for (std::size_t i = 0; i < lam; ++i) hare = lmap_step(hare, params);
  while (tortoise != hare) {
    tortoise = lmap_step(tortoise, params);
    hare = lmap_step(hare, params);
    ++mu;
  }

  CycleReport r;
  r.seed = seed.value;
  r.tail_len = mu;
  r.cycle_len = lam;
  r.cycle_entry = tortoise.value;
  // 0 is a fixed point, so it is in the orbit iff the orbit ends there.
  r.entered_zero = lam == 1 && tortoise.value == 0;
  return r;
}

CensusTable cycle_census(const MapParams& params, unsigned workers) {
  constexpr std::size_t kSeeds = std::size_t{kScale} + 1;
  CensusTable table;
  table.per_seed.resize(kSeeds);

  workers = std::max(1u, workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (kSeeds + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(kSeeds, lo + chunk);
      pool.emplace_back([&table, &params, lo, hi] {
        for (std::size_t s = lo; s < hi; ++s) {
          table.per_seed[s] = find_cycle(FixedSample{static_cast<std::uint16_t>(s)}, params);
        }
      });
    }
  }

  // Representative (minimum state) of the cycle through each entry point.
  constexpr std::int32_t kUnknown = -1;
  std::vector<std::int32_t> rep_of_entry(kSeeds, kUnknown);
  std::vector<std::size_t> basin(kSeeds, 0);
  std::vector<std::size_t> length(kSeeds, 0);
  for (const CycleReport& r : table.per_seed) {
    std::int32_t& rep = rep_of_entry[r.cycle_entry];
    if (rep == kUnknown) {
      FixedSample x{r.cycle_entry};
      std::uint16_t lowest = x.value;
      for (std::size_t i = 0; i < r.cycle_len; ++i) {
        x = lmap_step(x, params);
        lowest = std::min(lowest, x.value);
      }
      rep = lowest;
    }
    ++basin[static_cast<std::size_t>(rep)];
    length[static_cast<std::size_t>(rep)] = r.cycle_len;
  }

  for (std::size_t rep = 0; rep < kSeeds; ++rep) {
    if (basin[rep] != 0) {
      table.cycles.push_back({static_cast<std::uint16_t>(rep), length[rep], basin[rep]});
    }
  }
  std::sort(table.cycles.begin(), table.cycles.end(), [](const CycleSummary& a, const CycleSummary& b) {
    if (a.basin_size != b.basin_size) return a.basin_size > b.basin_size;
    return a.representative < b.representative;
  });

  table.zero_basin_fraction = static_cast<double>(basin[0]) / static_cast<double>(kSeeds);
  return table;
}

}  // namespace lmprng

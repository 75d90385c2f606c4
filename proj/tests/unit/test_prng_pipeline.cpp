#include <doctest.h>

#include <random>

#include "lmprng/prng_pipeline.hpp"
#include "lmprng/reference_models.hpp"
#include "oracles.hpp"

using namespace lmprng;

namespace {
GeneratorConfig hw(std::uint16_t seed, std::size_t n, ZeroPolicy z = ZeroPolicy::Faithful) {
  GeneratorConfig c;
  c.seed = seed;
  c.n = n;
  c.zero_policy = z;
  return c;
}
}  // namespace

TEST_CASE("sanitize_seed") {
  CHECK(sanitize_seed(0).value == 1);
  CHECK(sanitize_seed(6000).value == 6000);
  CHECK(sanitize_seed(65535).value == 65535);
}

TEST_CASE("hardware generate examples") {
  // Seed 0 runs as seed 1: map 4, 16, 64; EWMA floor((40a + 10s)/50).
  CHECK(generate(hw(0, 3)) == ValueStream{1, 4, 16});
  const GeneratorTrace t = generate_traced(hw(32768, 3));
  CHECK(t.map_states == std::vector<double>{65535, 0, 0});
  CHECK(t.outputs == ValueStream{39321, 31456, 25164});
  CHECK(generate(hw(6000, 0)).empty());

  GeneratorConfig poc = hw(6000, 0);
  poc.semantics = Semantics::Poc;
  CHECK(generate(poc).empty());
}

TEST_CASE("hardware generate matches the chained oracle") {
  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    const auto seed = static_cast<std::uint16_t>(rng() & 0xFFFF);
    const ValueStream got = generate(hw(seed, 300));
    const auto want = oracle::hw_stream(seed, 300);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == want[i]);
  }
}

TEST_CASE("poc generate drops the bare seed") {
  GeneratorConfig c = hw(6000, 5);
  c.semantics = Semantics::Poc;
  CHECK(generate(c) == ValueStream{9160, 18967, 20387, 28868, 25196});
  c.seed = 0;
  const ValueStream from_zero = generate(c);
  CHECK(from_zero.size() == 5);
  const ValueStream ref = poc_rolling_series(1.0, 6);
  CHECK(from_zero == ValueStream(ref.begin() + 1, ref.end()));

  c.weights = EwmaWeights{10, 40, 50};
  CHECK_THROWS_AS(generate(c), std::invalid_argument);
}

TEST_CASE("determinism and sanitization") {
  CHECK(generate(hw(12345, 1000)) == generate(hw(12345, 1000)));
  const GeneratorTrace t = generate_traced(hw(0, 1));
  CHECK(t.map_states.front() == 4.0);  // started from 1, not 0
}

TEST_CASE("zero policy") {
  // 32768 -> 65535 -> 0 collapses under the faithful policy.
  const GeneratorTrace faithful = generate_traced(hw(32768, 10));
  CHECK(faithful.map_states.back() == 0.0);
  CHECK(faithful.zero_perturbations == 0);

  const GeneratorTrace perturbed = generate_traced(hw(32768, 10, ZeroPolicy::PerturbToOne));
  CHECK(perturbed.zero_perturbations >= 1);
  CHECK(perturbed.map_states[2] == 4.0);
  for (std::size_t i = 1; i < perturbed.map_states.size(); ++i) {
    REQUIRE_FALSE((perturbed.map_states[i] == 0.0 && perturbed.map_states[i - 1] == 0.0));
  }

  // Every seed that collapses: never two zeros in a row.
  for (std::uint32_t s = 0; s < 65536; s += 97) {
    const GeneratorTrace tr = generate_traced(hw(static_cast<std::uint16_t>(s), 400, ZeroPolicy::PerturbToOne));
    for (std::size_t i = 1; i < tr.map_states.size(); ++i) {
      REQUIRE_FALSE((tr.map_states[i] == 0.0 && tr.map_states[i - 1] == 0.0));
    }
  }
}

TEST_CASE("find_cycle examples") {
  const CycleReport zero = find_cycle(FixedSample{0});
  CHECK(zero.tail_len == 0);
  CHECK(zero.cycle_len == 1);
  CHECK(zero.entered_zero);

  const CycleReport top = find_cycle(FixedSample{32768});
  CHECK(top.tail_len == 2);
  CHECK(top.cycle_len == 1);
  CHECK(top.entered_zero);

  // Frozen from an independent visited-set run outside C++.
  const CycleReport one = find_cycle(FixedSample{1});
  CHECK(one.tail_len == 3);
  CHECK(one.cycle_len == 71);
  CHECK_FALSE(one.entered_zero);
  const CycleReport paper_seed = find_cycle(FixedSample{6000});
  CHECK(paper_seed.tail_len == 19);
  CHECK(paper_seed.cycle_len == 155);
}

TEST_CASE("Brent agrees with the visited-set oracle") {
  auto agree = [](std::uint32_t seed) {
    const CycleReport r = find_cycle(FixedSample{static_cast<std::uint16_t>(seed)});
    const oracle::Orbit o = oracle::naive_orbit(seed);
    REQUIRE(r.tail_len == o.tail);
    REQUIRE(r.cycle_len == o.cycle);
    REQUIRE(r.entered_zero == o.hits_zero);
    REQUIRE(r.tail_len + r.cycle_len <= 65536);
  };
  for (std::uint32_t s = 0; s < 256; ++s) agree(s);
  std::mt19937 rng(99);
  for (int k = 0; k < 100; ++k) agree(rng() & 0xFFFF);
}

TEST_CASE("cycle census") {
  const CensusTable table = cycle_census(MapParams{4}, 1);
  CHECK(table.total_seeds() == 65536);

  std::size_t basin_total = 0;
  for (const CycleSummary& c : table.cycles) basin_total += c.basin_size;
  CHECK(basin_total == 65536);

  for (const CycleReport& r : table.per_seed) {
    REQUIRE(r.cycle_len >= 1);
    REQUIRE(r.tail_len + r.cycle_len <= 65536);
  }

  // Frozen from an independent functional-graph run outside C++.
  const std::vector<std::tuple<int, std::size_t, std::size_t>> expected{
      {64, 71, 27800}, {8, 155, 27790}, {28, 39, 4268}, {252, 18, 3420}, {0, 1, 1270},
      {168, 11, 868},  {2833, 4, 100},  {7666, 3, 14},  {22642, 2, 6}};
  REQUIRE(table.cycles.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(table.cycles[i].representative == std::get<0>(expected[i]));
    CHECK(table.cycles[i].cycle_len == std::get<1>(expected[i]));
    CHECK(table.cycles[i].basin_size == std::get<2>(expected[i]));
  }
  CHECK(table.zero_basin_fraction == doctest::Approx(1270.0 / 65536.0));

  const CensusTable parallel = cycle_census(MapParams{4}, 4);
  CHECK(parallel.zero_basin_fraction == table.zero_basin_fraction);
  REQUIRE(parallel.cycles.size() == table.cycles.size());
  for (std::size_t i = 0; i < table.cycles.size(); ++i) {
    CHECK(parallel.cycles[i].representative == table.cycles[i].representative);
    CHECK(parallel.cycles[i].basin_size == table.cycles[i].basin_size);
  }
}

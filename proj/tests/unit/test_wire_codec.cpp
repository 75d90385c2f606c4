#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "lmprng/errors.hpp"
#include "lmprng/wire_codec.hpp"

using namespace lmprng;

TEST_CASE("encode/decode examples") {
  CHECK(encode_stream(ValueStream{0xABCD}) == ByteStream{0xCD, 0xAB});
  CHECK(encode_stream(ValueStream{0x0000}) == ByteStream{0x00, 0x00});
  CHECK(encode_stream(ValueStream{}).empty());
  CHECK(decode_stream(ByteStream{0xCD, 0xAB}) == ValueStream{0xABCD});
  CHECK(decode_stream(ByteStream{0x00, 0x00}) == ValueStream{0});
  CHECK(decode_stream(ByteStream{}).empty());
}

TEST_CASE("odd byte count is a framing error") {
  try {
    decode_stream(ByteStream{0x01});
    FAIL("expected FramingError");
  } catch (const FramingError& e) {
    CHECK(e.offset() == 0);
  }
  try {
    decode_stream(ByteStream{0x01, 0x02, 0x03, 0x04, 0x05});
    FAIL("expected FramingError");
  } catch (const FramingError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("dedupe examples") {
  CHECK(dedupe_consecutive(ValueStream{5, 5, 7}) == ValueStream{5, 7});
  CHECK(dedupe_consecutive(ValueStream{}).empty());
  CHECK(dedupe_consecutive(ValueStream{3, 3, 3}) == ValueStream{3});
  CHECK(dedupe_consecutive(ValueStream{0, 4}) == ValueStream{4});
  CHECK(dedupe_consecutive(ValueStream{0, 4}, false) == ValueStream{0, 4});
  CHECK(dedupe_consecutive(ValueStream{0, 0, 1, 0}, true) == ValueStream{1, 0});
}

TEST_CASE("codec properties on random streams") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> len(0, 64);
  std::uniform_int_distribution<int> small(0, 3);
  for (int k = 0; k < 10000; ++k) {
    ValueStream v(len(rng));
    // Mix full-range values with a small alphabet so duplicates occur.
    const bool dense = k % 2 == 0;
    for (auto& x : v) x = static_cast<std::uint16_t>(dense ? rng() & 0xFFFF : small(rng));

    const ByteStream bytes = encode_stream(v);
    REQUIRE(bytes.size() == 2 * v.size());
    REQUIRE(decode_stream(bytes) == v);

    for (bool compat : {true, false}) {
      const ValueStream d = dedupe_consecutive(v, compat);
      REQUIRE(d.size() <= v.size());
      REQUIRE(dedupe_consecutive(d, compat) == d);
      REQUIRE(std::adjacent_find(d.begin(), d.end()) == d.end());
      // Subsequence check.
      auto it = v.begin();
      for (std::uint16_t x : d) {
        it = std::find(it, v.end(), x);
        REQUIRE(it != v.end());
        ++it;
      }
    }
  }
}

TEST_CASE("frame dump I/O") {
  const ByteStream bytes = encode_stream(ValueStream{1, 256, 65535, 0});
  std::stringstream ss;
  write_frames(ss, bytes);
  CHECK(read_frames(ss) == bytes);
}

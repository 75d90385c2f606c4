#pragma once

// Two-byte serial payload: value v is sent as [v & 0xFF, v >> 8] and read back
// as little-endian pairs. No resynchronization; a one-byte slip corrupts every
// following value.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lmprng/fixed_map.hpp"

namespace lmprng {

using ByteStream = std::vector<std::uint8_t>;

// Physical-layer settings of the original link, informational only.
inline constexpr unsigned kBaudRate = 9600;
inline constexpr unsigned kStopBits = 1;

ByteStream encode_stream(std::span<const std::uint16_t> values);

/// Throws FramingError (offset of the unpaired trailing byte) on odd length.
ValueStream decode_stream(std::span<const std::uint8_t> bytes);

/// Keeps each value that differs from the previous one. With paper_compat the
/// "previous" value starts at 0, so a leading 0 is dropped as well.
ValueStream dedupe_consecutive(std::span<const std::uint16_t> values, bool paper_compat = true);

/// Raw binary frame dump I/O.
void write_frames(std::ostream& os, std::span<const std::uint8_t> bytes);
ByteStream read_frames(std::istream& is);

}  // namespace lmprng

#include "lmprng/wire_codec.hpp"

#include <istream>
#include <iterator>
#include <ostream>

#include "lmprng/errors.hpp"

namespace lmprng {

ByteStream encode_stream(std::span<const std::uint16_t> values) {
  ByteStream out;
  out.reserve(2 * values.size());
  for (std::uint16_t v : values) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFFu));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  return out;
}

ValueStream decode_stream(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 2 != 0) throw FramingError(bytes.size() - 1);
  ValueStream out;
  out.reserve(bytes.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); i += 2) {
    out.push_back(static_cast<std::uint16_t>(bytes[i] | (bytes[i + 1] << 8)));
  }
  return out;
}

ValueStream dedupe_consecutive(std::span<const std::uint16_t> values, bool paper_compat) {
  ValueStream out;
  bool have_prev = paper_compat;
  std::uint16_t prev = 0;
  for (std::uint16_t v : values) {
    if (!have_prev || v != prev) {
      out.push_back(v);
      prev = v;
      have_prev = true;
    }
  }
  return out;
}

void write_frames(std::ostream& os, std::span<const std::uint8_t> bytes) {
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

ByteStream read_frames(std::istream& is) {
  return ByteStream(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

}  // namespace lmprng

#include "lmprng/errors.hpp"

namespace lmprng {

FramingError::FramingError(std::size_t offset)
    : std::runtime_error("framing error: unpaired byte at offset " + std::to_string(offset)),
      offset_(offset) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace lmprng

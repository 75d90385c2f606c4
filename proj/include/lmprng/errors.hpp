#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lmprng {

/// Odd-length frame dump: the last byte has no partner.
class FramingError : public std::runtime_error {
 public:
  explicit FramingError(std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Malformed line in a value file. Line numbers are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A statistic is undefined for the input (zero variance, too few samples).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientBins : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace lmprng

#pragma once

#include <stdexcept>
#include <string>

namespace somguard {

// Precondition violated by a caller (bad index, mismatched dimension, ...).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Malformed text input. Row and column are 1-based; 0 means "not applicable".
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t row = 0, std::size_t column = 0)
      : std::runtime_error(what), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
};

// Corrupt, truncated or version-mismatched persisted artifact.
class format_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Unsupported option or tag supplied by a user.
class usage_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace somguard

#pragma once

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace powcov {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group or lattice exceeds the configured size limits.
class CapError : public Error {
 public:
  using Error::Error;
};

/// Malformed descriptor text; `position` is the 0-based offset of the fault.
class ParseError : public Error {
 public:
  ParseError(std::string const& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A table, file, or argument violates a structural requirement.
class InvalidGroup : public Error {
 public:
  using Error::Error;
};

/// Size limits.  Construction is exhaustively validated up to
/// `construction`; subgroup enumeration refuses groups above `lattice`.
struct Caps {
  static constexpr std::size_t kHardCeiling = 512;

  std::size_t construction = 512;
  std::size_t lattice = 256;

  /// Defaults, overridden by POWCOV_MAX_ORDER (clamped to the hard ceiling).
  /// A value that is not a positive integer is an error.
  static Caps from_env() {
    Caps caps;
    if (char const* raw = std::getenv("POWCOV_MAX_ORDER"); raw != nullptr && *raw != '\0') {
      char* end = nullptr;
      unsigned long value = std::strtoul(raw, &end, 10);
      if (end == nullptr || *end != '\0' || value == 0) {
        throw Error(std::string("POWCOV_MAX_ORDER must be a positive integer, got '") + raw + "'");
      }
      std::size_t clamped = value > kHardCeiling ? kHardCeiling : static_cast<std::size_t>(value);
      caps.construction = clamped;
      caps.lattice = clamped;
    }
    return caps;
  }
};

}  // namespace powcov

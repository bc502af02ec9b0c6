#pragma once

#include <stdexcept>
#include <string>

namespace causalg {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression or file syntax error, carries a character/line position.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

/// Operands built over different variable tables.
struct MixedTables : Error {
  MixedTables() : Error("polynomials belong to different variable tables") {}
};

/// The S-pair reduction budget of a Groebner computation was exhausted.
struct StepLimitExceeded : Error {
  explicit StepLimitExceeded(std::uint64_t limit)
      : Error("Groebner step limit exceeded (" + std::to_string(limit) + ")") {}
};

/// A conditioning denominator vanished; the map is undefined on the boundary.
struct BoundaryPoint : Error {
  explicit BoundaryPoint(const std::string& what) : Error(what) {}
};

/// Conditioning on an event of probability zero.
struct ZeroProbabilityEvent : Error {
  explicit ZeroProbabilityEvent(const std::string& what) : Error(what) {}
};

}  // namespace causalg

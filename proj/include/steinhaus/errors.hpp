#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace steinhaus {

// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The refinement loop hit the precision cap without separating two values.
// This is a hard error: the kernel never reports Equal for values it could
// not prove equal symbolically.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// A coefficient references a basis index with no committed q_n.
class UnknownBasisIndex : public Error {
 public:
  using Error::Error;
};

class InvalidEpsilon : public Error {
 public:
  using Error::Error;
};

// decompose() requires 8*epsilon < length(J).
class IntervalTooShort : public Error {
 public:
  using Error::Error;
};

class HeightCapExceeded : public Error {
 public:
  using Error::Error;
};

// More than 2k+1 qualified candidates failed in find_covering_translate.
// The counting argument rules this out, so it signals a soundness bug.
class CandidateBoundExceeded : public Error {
 public:
  using Error::Error;
};

// An internal assertion that the construction guarantees has failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace steinhaus

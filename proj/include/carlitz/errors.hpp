#pragma once

#include <stdexcept>
#include <string>

namespace carlitz {

// Thrown when a configured search/enumeration cap would be exceeded.
// Sweep drivers convert this into a "skip" record instead of a failure.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Inversion of a nonzero zero divisor. Carries a printable witness so the
// caller can certify that a modulus claimed to be irreducible is not.
struct ZeroDivisor : std::runtime_error {
  std::string witness;
  ZeroDivisor(const std::string& what, std::string w)
      : std::runtime_error(what), witness(std::move(w)) {}
};

// Text input that does not match the polynomial / rational grammar.
struct ParseError : std::runtime_error {
  std::size_t column;  // 1-based position in the input string
  ParseError(const std::string& what, std::size_t col)
      : std::runtime_error(what + " (column " + std::to_string(col) + ")"),
        column(col) {}
};

}  // namespace carlitz

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace neretin {

// Malformed input text. `pos` is a byte offset into the offending string.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t p, const std::string& msg)
      : std::runtime_error(msg), pos(p) {}
};

// Well-formed text denoting an invalid value (bad antichain, size mismatch,
// alphabet violation, ...).
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation applied outside its mathematical domain (e.g. a parity query on
// an element that is not an automorphism).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A certificate failed its internal re-check. Indicates a bug, never user error.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace neretin

#pragma once

#include <stdexcept>
#include <string>

namespace upsilon {

// A computation was asked of an input that does not satisfy its precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph data (dangling edge, bad reversal pairing, ...).
class GraphError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Malformed textual input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace upsilon

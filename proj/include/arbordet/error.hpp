#pragma once

#include <stdexcept>
#include <string>

namespace arbordet {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text, matrix file, or digraph file.
struct ParseError : Error {
  using Error::Error;
};

/// Violated precondition: bad index, unknown arc, unsatisfied hypothesis.
struct DomainError : Error {
  using Error::Error;
};

/// A combinatorial search would exceed its configured cap.
struct LimitError : Error {
  using Error::Error;
};

}  // namespace arbordet

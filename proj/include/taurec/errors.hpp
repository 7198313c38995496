#pragma once

#include <stdexcept>
#include <string>

namespace taurec {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed input: definition files, module specs, JSON
struct ParseError : Error {
  ParseError(const std::string& msg, int line = 0, int column = 0)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + msg : msg),
        line(line), column(column) {}
  int line;
  int column;
};

struct FieldMismatch : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// algebra data violating its own invariants
struct InvalidAlgebra : Error {
  using Error::Error;
};

struct InvalidModule : Error {
  using Error::Error;
};

// a hypothesis required by an operation does not hold
struct HypothesisRefusal : Error {
  HypothesisRefusal(const std::string& msg, std::string hypothesis)
      : Error(msg), hypothesis(std::move(hypothesis)) {}
  std::string hypothesis;
};

// a computed result disagrees with a stored expectation
struct VerificationMismatch : Error {
  using Error::Error;
};

// two independent computations of the same quantity disagree
struct InternalConsistencyError : Error {
  using Error::Error;
};

// an algorithm could not decide (e.g. no splitting endomorphism over F_p)
struct Inconclusive : Error {
  using Error::Error;
};

}  // namespace taurec

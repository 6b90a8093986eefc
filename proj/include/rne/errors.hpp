#pragma once

#include <stdexcept>
#include <string>

namespace rne {

// Base for every error raised by the library. Callers that only care about
// "did it work" can catch this; the CLI maps ConfigError to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand lengths disagree (needs vs weights, p vs q, matrix rows).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input is structurally valid but carries no usable mass (all-zero needs,
// empty group, singleton where a pair is required).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A value lies outside its admissible range (negative need, probability > 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Member sets cannot be split as requested (odd count, overlapping pools).
class PartitionError : public Error {
 public:
  using Error::Error;
};

// Scenario, roster or plan file is malformed or violates a model constraint.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rne

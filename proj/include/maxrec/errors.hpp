#pragma once

#include <stdexcept>
#include <string>

namespace maxrec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent equation configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition (e.g. non-periodic segment).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The requested theorem or check does not apply to this input
// (partial delay set, missing or invalid report).
class NotApplicable : public Error {
 public:
  using Error::Error;
};

// A trajectory does not cover the indices an analysis needs.
class InsufficientHistory : public Error {
 public:
  using Error::Error;
};

}  // namespace maxrec

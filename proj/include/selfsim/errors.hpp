#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

// Base class for all library errors. Subclasses distinguish bad input,
// violated operation preconditions, and internal consistency failures
// (the latter signal a bug, not a user mistake).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input errors.
struct NotABijection : Error {
  using Error::Error;
};
struct ClosureCapExceeded : Error {
  using Error::Error;
};
struct OrderMismatch : Error {
  using Error::Error;
};
struct ParseError : Error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " (line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// Precondition violations.
struct NotAPGroup : Error {
  using Error::Error;
};
struct NotNormal : Error {
  using Error::Error;
};
struct EnumerationCapExceeded : Error {
  using Error::Error;
};
struct NotPowerful : Error {
  using Error::Error;
};
struct NotMaximalClass : Error {
  using Error::Error;
};
struct OrderTooSmall : Error {
  using Error::Error;
};
struct GeneratorsDontGenerate : Error {
  using Error::Error;
};
struct NotSimple : Error {
  using Error::Error;
};
struct NotSelfSimilar : Error {
  using Error::Error;
};
struct LevelTooLarge : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};

// Filesystem failures surfaced by the CLI.
struct IoError : Error {
  using Error::Error;
};

// Internal consistency failures. These must not occur on valid inputs.
struct BasisSearchFailed : Error {
  using Error::Error;
};
struct LemmaViolation : Error {
  using Error::Error;
};
struct NotFaithful : Error {
  using Error::Error;
};

}  // namespace selfsim

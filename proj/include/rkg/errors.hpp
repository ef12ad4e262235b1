#pragma once

#include <stdexcept>
#include <string>

namespace rkg {

// Base class of every error thrown by the workbench.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Values from different group or field contexts were combined.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// A characteristic-p operation was requested over Q (or vice versa).
class WrongCharacteristic : public Error {
 public:
  using Error::Error;
};

// A finite-group-only operation was called on an infinite backend.
class InfiniteGroup : public Error {
 public:
  using Error::Error;
};

// A polynomial expansion exceeded its term budget.
class TermBlowup : public Error {
 public:
  using Error::Error;
};

// A finite enumeration (configurations, table rows, subsets) exceeded its
// budget.
class EnumerationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A bounded search ended without a definite answer.
class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A rule coefficient does not live in the requested subfield level.
class CoefficientFieldTooLarge : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

// The question is undecidable for this backend (e.g. CA injectivity over
// Z^d, d >= 2).
class Undecidable : public Error {
 public:
  using Error::Error;
};

// The restriction ladder was started on a pair that is not a section.
class SectionFailed : public Error {
 public:
  using Error::Error;
};

// Error with a source position, used by the expression parser and the
// evaluator.
class SourcedError : public Error {
 public:
  SourcedError(const std::string& what, int line, int col)
      : Error(what + " (line " + std::to_string(line) + ", col " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class ParseError : public SourcedError {
 public:
  using SourcedError::SourcedError;
};

class TypeError : public SourcedError {
 public:
  using SourcedError::SourcedError;
};

class UnknownName : public SourcedError {
 public:
  using SourcedError::SourcedError;
};

}  // namespace rkg

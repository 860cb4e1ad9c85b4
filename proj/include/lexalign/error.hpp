#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexalign {

/// Input that violates a documented file schema or value range.
/// The command-line tool maps these to exit status 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A malformed transcript or metadata record. `line()` is 1-based and
/// refers to the first physical line of the offending record.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  /// The message without the line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// A caller broke an operation's precondition (e.g. a non-dyadic dialogue
/// passed to the lexicon builder, or an unknown speaker id).
class ContractViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A statistic whose value is mathematically undefined for the given data
/// (zero variance, |r| = 1 in a Fisher transform, ...).
class UndefinedResult : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Regression design matrix without full column rank.
class SingularDesign : public UndefinedResult {
 public:
  using UndefinedResult::UndefinedResult;
};

}  // namespace lexalign

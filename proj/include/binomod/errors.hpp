#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace binomod {

/// Failure conditions reported by the library. Each operation documents
/// which of these it can raise; anything else is a precondition violation
/// and surfaces as std::invalid_argument.
enum class Errc {
  NotPrime,
  OutOfRange,
  ModulusPowerMismatch,
  ModulusMismatch,
  DigitOutOfRange,
  IndexOutOfRange,
  ModulusTooSmall,
  OddPrimeRequired,
  BadParamsShape,
  SizeLimit,
  NegativeExponent,
  UnboundVariable,
  DuplicateBinder,
  ModulusNotInteger,
  SyntaxError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Syntax error with 1-based source position and the set of tokens that
/// would have been accepted at that point.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column,
             std::vector<std::string> expected)
      : Error(Errc::SyntaxError, what),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace binomod

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ainv {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A fixpoint iteration ran past its step budget or its declared height.
class IterationBudgetExceeded : public Error {
public:
  explicit IterationBudgetExceeded(std::size_t budget)
      : Error("iteration budget exceeded after " + std::to_string(budget) +
              " steps"),
        budget_(budget) {}
  std::size_t budget() const { return budget_; }

private:
  std::size_t budget_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              what),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A transfer function, algorithm or literal the chosen domain cannot handle.
class Unsupported : public Error {
public:
  using Error::Error;
};

} // namespace ainv

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gradeq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed .aut / pts input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// A structurally invalid system, state index, DetState or move.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// The system violates the branching discipline a semantics requires.
class InstanceError : public Error {
  public:
    using Error::Error;
};

class BudgetExceeded : public Error {
  public:
    BudgetExceeded(std::size_t budget, std::size_t frontier)
        : Error("exploration budget of " + std::to_string(budget) + " det states exceeded (frontier size " +
                std::to_string(frontier) + ")"),
          budget_(budget), frontier_(frontier) {}

    [[nodiscard]] std::size_t budget() const { return budget_; }
    [[nodiscard]] std::size_t frontier() const { return frontier_; }

  private:
    std::size_t budget_;
    std::size_t frontier_;
};

/// Illegal game action (wrong phase, pair not offered, ...).
class GameError : public Error {
  public:
    using Error::Error;
};

} // namespace gradeq

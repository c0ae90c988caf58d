#ifndef ULTRAS_ERRORS_HPP
#define ULTRAS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ultras {

/// Base class for every error the workbench raises on bad input.
class UltrasError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violation of an internal API contract (kind mismatch, value out of the
/// domain range, malformed argument). These indicate caller bugs rather than
/// bad user input.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Syntax or static-check failure with a 1-based source position.
class ParseError : public UltrasError {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : UltrasError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised when state-space exploration discovers more states than allowed.
class BudgetExceededError : public UltrasError {
public:
    BudgetExceededError(std::size_t limit, std::size_t frontier)
        : UltrasError("state budget exceeded: more than " + std::to_string(limit) +
                      " states reachable (frontier size " + std::to_string(frontier) + ")"),
          limit_(limit),
          frontier_(frontier) {}

    std::size_t limit() const { return limit_; }
    std::size_t frontier() const { return frontier_; }

private:
    std::size_t limit_;
    std::size_t frontier_;
};

}  // namespace ultras

#endif

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leafdens {

// A violated precondition (bad parameter, unsupported shape, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed canonical-code text. `offset()` is the byte position of the problem.
class ParseError : public DomainError {
public:
    ParseError(const std::string& what, std::size_t offset)
        : DomainError(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Well-formed text that describes a tree with an outdegree-1 vertex.
class StructureError : public ParseError {
public:
    using ParseError::ParseError;
};

// A computation refused because it would exceed a configured resource budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Evaluation at a pole of a rational function.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace leafdens

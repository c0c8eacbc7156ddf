#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cohort fields outside x >= 1, 0 <= y <= x, f >= 1.
class InvalidCohort : public Error {
public:
    using Error::Error;
};

/// A formula's scenario-specific preconditions on (x, y) do not hold.
class DegenerateCohort : public Error {
public:
    using Error::Error;
};

/// No content is shared, so there is nothing for CP and sharer to bargain over.
class NoBargain : public Error {
public:
    using Error::Error;
};

class ZeroBenefitWeight : public Error {
public:
    ZeroBenefitWeight() : Error("benefit weight a must be positive") {}
};

class InvalidRatio : public Error {
public:
    using Error::Error;
};

class InvalidWeights : public Error {
public:
    using Error::Error;
};

class UnknownAgent : public Error {
public:
    using Error::Error;
};

class DuplicateRequest : public Error {
public:
    using Error::Error;
};

class InvalidAgents : public Error {
public:
    using Error::Error;
};

class EmptyPool : public Error {
public:
    EmptyPool() : Error("user pool is empty") {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column)
    {
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace hcd

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semibound {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonPositiveVariance : public Error {
public:
    using Error::Error;
};

class BetaOutOfRange : public Error {
public:
    using Error::Error;
};

class GammaOutOfRange : public Error {
public:
    using Error::Error;
};

class WrongTailDirection : public Error {
public:
    using Error::Error;
};

class InfeasibleBeta : public Error {
public:
    using Error::Error;
};

class Infeasible : public Error {
public:
    using Error::Error;
};

class NoRootInBracket : public Error {
public:
    using Error::Error;
};

class CriticalRatioOutOfRange : public Error {
public:
    using Error::Error;
};

class CorrelationOutOfRange : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class InfeasibleMasses : public Error {
public:
    using Error::Error;
};

class EnumerationTooLarge : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class TooFewRows : public Error {
public:
    using Error::Error;
};

// CSV ingestion failure with the offending location attached.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t row, std::string column)
        : Error(msg + " (row " + std::to_string(row) + ", column '" + column + "')"),
          row_(row),
          column_(std::move(column)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

} // namespace semibound

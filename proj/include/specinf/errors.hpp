#pragma once

#include <stdexcept>
#include <string>

namespace specinf {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

// quotient_direction(Y, a) with a inside Y has no well-defined image
struct UndefinedQuotientDirection : Error {
    explicit UndefinedQuotientDirection(const std::string& msg) : Error(msg) {}
};

struct DomainIsAPoint : Error {
    explicit DomainIsAPoint(const std::string& msg) : Error(msg) {}
};

struct InsufficientBudget : Error {
    InsufficientBudget(const std::string& msg, int required)
        : Error(msg), required_strata(required) {}
    int required_strata;
};

// carries the best Ritz data available when the iteration cap is hit
struct ConvergenceFailure : Error {
    ConvergenceFailure(const std::string& msg, double best_value, double best_residual, int iterations)
        : Error(msg), value(best_value), residual(best_residual), iters(iterations) {}
    double value;
    double residual;
    int iters;
};

struct OracleFailure : Error {
    explicit OracleFailure(const std::string& msg) : Error(msg) {}
};

struct RadiusTooLarge : Error {
    explicit RadiusTooLarge(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg, int line = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_number(line) {}
    int line_number;
};

} // namespace specinf

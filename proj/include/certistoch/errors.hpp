// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace certistoch {

// Every failure the library raises derives from Error. The CLI maps the
// concrete type onto an exit code, so keep the hierarchy flat.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameters outside the documented domain (sigma <= 0, w outside (0,1), ...).
struct DomainError : Error {
    using Error::Error;
};

// A function evaluated to NaN/inf somewhere it was sampled.
struct EvaluationError : Error {
    EvaluationError(const std::string& what, double where)
        : Error(what + " (at x=" + std::to_string(where) + ")"), x(where) {}
    double x;
};

// An entropy integral, a coefficient series or a supremum does not converge.
struct DivergenceError : Error {
    DivergenceError(const std::string& what, double exponent)
        : Error(what), exponent(exponent) {}
    double exponent;
};

// A bound was requested outside the region where the theorem behind it holds.
struct ValidityError : Error {
    ValidityError(const std::string& what, double threshold)
        : Error(what), threshold(threshold) {}
    double threshold;
};

struct CapExceeded : Error {
    CapExceeded(const std::string& what, long long cap) : Error(what), cap(cap) {}
    long long cap;
};

struct ToleranceNotMet : Error {
    ToleranceNotMet(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate(estimate), error_bound(error_bound) {}
    double estimate;
    double error_bound;
};

// Caller broke a stated precondition that we could detect (e.g. a predicate
// that is not monotone).
struct ContractError : Error {
    using Error::Error;
};

}  // namespace certistoch

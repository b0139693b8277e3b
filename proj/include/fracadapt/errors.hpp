#pragma once

#include <stdexcept>
#include <string>

namespace fracadapt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A series, quadrature or iteration did not reach its accuracy target.
///
/// Carries the last partial result and how much work was spent, so callers
/// can tell a slow-converging evaluation from a hopeless one.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double partial_result, int terms_used,
                    double error_estimate)
        : Error(what)
        , partial_result_(partial_result)
        , terms_used_(terms_used)
        , error_estimate_(error_estimate) {}

    double partial_result() const noexcept { return partial_result_; }
    int terms_used() const noexcept { return terms_used_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_result_;
    int terms_used_;
    double error_estimate_;
};

class RootNotFoundError : public Error {
public:
    using Error::Error;
};

/// The linear system of one time level could not be solved.
class SingularStepError : public Error {
public:
    using Error::Error;
};

/// A time query lies outside the committed part of a solution history.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

class ExponentUndefinedError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace fracadapt

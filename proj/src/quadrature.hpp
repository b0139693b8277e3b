#pragma once

// Thin wrappers over Boost's double-exponential quadrature that turn Boost's
// own exceptions and non-finite results into EvaluationError.

#include "fracadapt/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracadapt::detail {

struct Quadrature {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

/// Integral over a finite interval; endpoint singularities are fine.
template <class F>
Quadrature integrate_finite(F&& f, double a, double b, double tolerance,
                            const char* context) {
    Quadrature q;
    if (a == b) return q;
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    try {
        q.value = integrator.integrate(f, a, b, tolerance, &q.error, &q.l1);
    } catch (const std::exception& e) {
        throw EvaluationError(std::string(context) + ": " + e.what(),
                              std::numeric_limits<double>::quiet_NaN(), 0,
                              std::numeric_limits<double>::infinity());
    }
    if (!std::isfinite(q.value)) {
        throw EvaluationError(std::string(context) + ": non-finite quadrature result", q.value,
                              0, q.error);
    }
    return q;
}

/// Integral over [a, infinity).
template <class F>
Quadrature integrate_to_infinity(F&& f, double a, double tolerance, const char* context) {
    Quadrature q;
    static thread_local boost::math::quadrature::exp_sinh<double> integrator(12);
    try {
        q.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(), tolerance,
                                       &q.error, &q.l1);
    } catch (const std::exception& e) {
        throw EvaluationError(std::string(context) + ": " + e.what(),
                              std::numeric_limits<double>::quiet_NaN(), 0,
                              std::numeric_limits<double>::infinity());
    }
    if (!std::isfinite(q.value)) {
        throw EvaluationError(std::string(context) + ": non-finite quadrature result", q.value,
                              0, q.error);
    }
    return q;
}

}  // namespace fracadapt::detail

#include "fracadapt/specfun.hpp"

#include "fracadapt/errors.hpp"

#include <cmath>

namespace fracadapt::specfun {

namespace {

struct SeriesSum {
    double sum = 1.0;    // includes the leading 1
    double tail = 0.0;   // sum of the terms with k >= 1
    bool converged = false;
    int terms = 0;
};

SeriesSum hyp_series(double a, double b, double c, double z, int max_terms) {
    SeriesSum out;
    double term = 1.0;
    for (int k = 0; k < max_terms; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        out.tail += term;
        out.terms = k + 1;
        if (term == 0.0 || std::abs(term) <= 1e-17 * std::abs(1.0 + out.tail)) {
            out.converged = true;
            break;
        }
    }
    out.sum = 1.0 + out.tail;
    return out;
}

bool near_integer(double x) { return std::abs(x - std::nearbyint(x)) < 1e-9; }

double gauss_value_at_one(double a, double b, double c) {
    return gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b);
}

}  // namespace

double gauss_2f1(double a, double b, double c, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("gauss_2f1: s must lie in [0,1]");
    if (c <= 0.0 && c == std::nearbyint(c))
        throw DomainError("gauss_2f1: c must not be a nonpositive integer");
    if (a == 0.0 || b == 0.0 || s == 0.0) return 1.0;

    const double d = c - a - b;
    if (s == 1.0) {
        if (!(d > 0.0)) throw DomainError("gauss_2f1: at s = 1 require c - a - b > 0");
        return gauss_value_at_one(a, b, c);
    }
    const bool terminating = (a <= 0.0 && a == std::nearbyint(a)) ||
                             (b <= 0.0 && b == std::nearbyint(b));
    if (s <= 0.5 || terminating) {
        const auto r = hyp_series(a, b, c, s, 10000);
        if (!r.converged)
            throw EvaluationError("gauss_2f1: series did not converge", r.sum, r.terms, 0.0);
        return r.sum;
    }
    if (!near_integer(d)) {
        // Connection formula mapping s to 1 - s.
        const double w = 1.0 - s;
        const auto first = hyp_series(a, b, 1.0 - d, w, 10000);
        const auto second = hyp_series(c - a, c - b, d + 1.0, w, 10000);
        if (!first.converged || !second.converged)
            throw EvaluationError("gauss_2f1: connection series did not converge", first.sum,
                                  first.terms + second.terms, 0.0);
        const double g1 = gamma(c) * gamma(d) * rgamma(c - a) * rgamma(c - b);
        const double g2 = gamma(c) * gamma(-d) * rgamma(a) * rgamma(b);
        return g1 * first.sum + std::pow(w, d) * g2 * second.sum;
    }
    const auto r = hyp_series(a, b, c, s, 2000000);
    if (!r.converged)
        throw EvaluationError("gauss_2f1: series did not converge near s = 1", r.sum, r.terms,
                              0.0);
    return r.sum;
}

double rho(double alpha_i, double alpha1, double s) {
    if (!(alpha1 > 0.0 && alpha1 < 1.0)) throw DomainError("rho: alpha1 must lie in (0,1)");
    if (!(alpha_i > 0.0 && alpha_i <= alpha1))
        throw DomainError("rho: alpha_i must lie in (0, alpha1]");
    if (!(s >= 0.0)) throw DomainError("rho: s must be nonnegative");
    if (s >= 1.0) return 0.0;
    if (s == 0.0) return 1.0;

    const double beta = 1.0 - alpha1;
    const double g = gamma(alpha1) * gamma(1.0 - alpha_i) * rgamma(alpha1 - alpha_i);
    if (s <= 0.5) return gauss_2f1(alpha_i, -beta, alpha1, s) - g * std::pow(s, beta);

    // Connection formula: the regular part 2F1(alpha_i, -beta; alpha_i; 1-s) equals
    // s^beta and cancels the subtracted term exactly, leaving
    //   rho = beta/(1-alpha_i) (1-s)^{1-alpha_i} 2F1(alpha1-alpha_i, 1; 2-alpha_i; 1-s).
    const double w = 1.0 - s;
    const auto r = hyp_series(alpha1 - alpha_i, 1.0, 2.0 - alpha_i, w, 10000);
    if (!r.converged) throw EvaluationError("rho: series did not converge", r.sum, r.terms, 0.0);
    return beta / (1.0 - alpha_i) * std::pow(w, 1.0 - alpha_i) * r.sum;
}

}  // namespace fracadapt::specfun

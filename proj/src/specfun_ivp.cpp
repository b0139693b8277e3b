#include "fracadapt/specfun.hpp"

#include "fracadapt/errors.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace fracadapt::specfun {

namespace {

void require_decreasing_orders(std::span<const double> alphas, bool allow_alpha1_one,
                               const char* who) {
    if (alphas.empty()) throw DomainError(std::string(who) + ": at least one order required");
    const double top = alphas[0];
    if (!(top > 0.0 && (allow_alpha1_one ? top <= 1.0 : top < 1.0)))
        throw DomainError(std::string(who) + ": alpha_1 out of range");
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (!(alphas[i] > 0.0 && alphas[i] < alphas[i - 1]))
            throw DomainError(std::string(who) + ": orders must satisfy 0 < alpha_l < ... < alpha_1");
}

// Orders and arguments of the kernel E_{(a1, a1-a_l, ..., a1-a_2), .}(-lam t^a1, -q_l t^{a1-a_l}, ...)
// for coefficients already divided by q_1.
struct KernelShape {
    std::vector<double> orders;
    std::vector<double> rates;  // lam, q_l, ..., q_2
};

KernelShape kernel_shape(double lambda, std::span<const double> qs_normalised,
                         std::span<const double> alphas) {
    KernelShape k;
    k.orders.push_back(alphas[0]);
    k.rates.push_back(lambda);
    for (std::size_t j = alphas.size(); j-- > 1;) {
        k.orders.push_back(alphas[0] - alphas[j]);
        k.rates.push_back(qs_normalised[j]);
    }
    return k;
}

double kernel_series(const KernelShape& k, double beta, double t) {
    FKernelParams p;
    p.mus = k.orders;
    p.as = k.rates;
    p.beta = beta;
    p.t = t;
    return f_kernel(p);
}

std::vector<double> normalised(std::span<const double> qs, const char* who) {
    if (qs.empty() || !(qs[0] > 0.0)) throw DomainError(std::string(who) + ": q_1 must be positive");
    std::vector<double> out(qs.begin(), qs.end());
    for (double& q : out) {
        if (!(q > 0.0)) throw DomainError(std::string(who) + ": coefficients must be positive");
        q /= qs[0];
    }
    return out;
}

}  // namespace

double SignedPowerSum::operator()(double s) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < exponents.size(); ++j)
        sum += coefficients[j] * (exponents[j] == 0.0 ? 1.0 : std::pow(s, exponents[j]));
    return sum;
}

void SignedPowerSum::validate() const {
    const std::size_t n = exponents.size();
    if (n < 2 || coefficients.size() != n)
        throw DomainError("SignedPowerSum: need at least two terms with matching coefficients");
    if (exponents[0] != 0.0) throw DomainError("SignedPowerSum: gamma_0 must be 0");
    for (std::size_t j = 1; j < n; ++j)
        if (!(exponents[j] > exponents[j - 1])) throw DomainError("SignedPowerSum: exponents must increase");
    if (exponents.back() > 1.0) throw DomainError("SignedPowerSum: exponents must not exceed 1");
    std::size_t j = 0;
    while (j < n && coefficients[j] > 0.0) ++j;
    if (j == 0 || j == n) throw DomainError("SignedPowerSum: need positive then negative coefficients");
    for (; j < n; ++j)
        if (!(coefficients[j] < 0.0)) throw DomainError("SignedPowerSum: sign pattern violated");
}

double sign_change_root(const SignedPowerSum& p) {
    p.validate();
    double lo = 1e-8;
    while (p(lo) <= 0.0) {
        lo *= 1e-4;
        if (lo < 1e-300) throw RootNotFoundError("sign_change_root: no positive value near 0");
    }
    double hi = 1.0;
    while (p(hi) >= 0.0) {
        if (hi <= lo) hi = lo;
        hi *= 2.0;
        if (hi > 1e12) throw RootNotFoundError("sign_change_root: no sign change below 1e12");
    }
    if (hi <= lo) lo = hi * 0.5;
    // Bisect down to adjacent doubles.
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (p(mid) > 0.0) lo = mid; else hi = mid;
    }
    return std::abs(p(lo)) <= std::abs(p(hi)) ? lo : hi;
}

double mml_contour(double t, double beta, double lambda, std::span<const double> lower_qs,
                   std::span<const double> alphas) {
    require_decreasing_orders(alphas, false, "mml_contour");
    if (lower_qs.size() + 1 != alphas.size())
        throw DomainError("mml_contour: expected one coefficient per lower order");
    for (double q : lower_qs)
        if (!(q > 0.0)) throw DomainError("mml_contour: coefficients must be positive");
    if (!(lambda > 0.0)) throw DomainError("mml_contour: lambda must be positive");
    const double a1 = alphas[0];
    if (!(beta > 1.0 && beta < 1.0 + a1)) throw DomainError("mml_contour: beta must lie in (1, 1+alpha_1)");
    if (!(t > 0.0)) throw DomainError("mml_contour: t must be positive");

    using std::numbers::pi;
    const double e = (1.0 - beta) / a1;  // in (-1, 0)
    const double sin_b = std::sin(beta * pi);
    const double sin_l = std::sin((beta - a1) * pi);
    std::vector<double> sin_j, ratio_j;
    std::vector<std::complex<double>> phase_j;
    for (std::size_t j = 1; j < alphas.size(); ++j) {
        sin_j.push_back(std::sin((beta - a1 + alphas[j]) * pi));
        ratio_j.push_back(alphas[j] / a1);
        phase_j.push_back(std::polar(1.0, (a1 - alphas[j]) * pi));
    }
    const std::complex<double> lambda_phase = std::polar(lambda, a1 * pi);

    // g(s) = exp(-t s^{1/a1}) v(s) / |s + xi(s)|^2; the s^e factor is handled separately.
    auto g = [&](double s) {
        double v = s * sin_b + lambda * sin_l;
        std::complex<double> xi = lambda_phase;
        for (std::size_t j = 0; j < sin_j.size(); ++j) {
            const double sp = std::pow(s, ratio_j[j]);
            v += lower_qs[j] * sp * sin_j[j];
            xi += lower_qs[j] * sp * phase_j[j];
        }
        const double decay = std::exp(-t * std::pow(s, 1.0 / a1));
        if (decay == 0.0) return 0.0;
        return decay * v / std::norm(s + xi);
    };
    // On [0,1] substitute s = u^{1/(1+e)} so that s^e ds = du/(1+e).
    auto head_integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        return g(std::pow(u, 1.0 / (1.0 + e))) / (1.0 + e);
    };
    auto tail_integrand = [&](double s) { return std::pow(s, e) * g(s); };

    const auto head = detail::integrate_finite(head_integrand, 0.0, 1.0, 1e-13, "mml_contour");
    const auto tail = detail::integrate_to_infinity(tail_integrand, 1.0, 1e-13, "mml_contour");
    const double integral = head.value + tail.value;
    const double error = head.error + tail.error;
    if (error > 1e-8 * std::abs(integral))
        throw EvaluationError("mml_contour: quadrature error above 1e-8 of the result", integral,
                              0, error);
    return std::pow(t, 1.0 - beta) / (a1 * pi) * integral;
}

double homogeneous_solution(double t, double lambda, std::span<const double> qs,
                            std::span<const double> alphas) {
    require_decreasing_orders(alphas, false, "homogeneous_solution");
    if (qs.size() != alphas.size()) throw DomainError("homogeneous_solution: one q per order");
    if (!(lambda >= 0.0)) throw DomainError("homogeneous_solution: lambda must be nonnegative");
    if (!(t >= 0.0)) throw DomainError("homogeneous_solution: t must be nonnegative");
    const auto qn = normalised(qs, "homogeneous_solution");
    if (lambda == 0.0 || t == 0.0) return 1.0;

    const auto shape = kernel_shape(lambda / qs[0], qn, alphas);
    double y = kernel_series(shape, 1.0, t);
    for (std::size_t j = 1; j < alphas.size(); ++j)
        y += qn[j] * kernel_series(shape, 1.0 + alphas[0] - alphas[j], t);
    return y;
}

double constant_coeff_inverse(const std::function<double(double)>& v, double t, double lambda,
                              std::span<const double> qs, std::span<const double> alphas,
                              double w0, double tolerance) {
    require_decreasing_orders(alphas, true, "constant_coeff_inverse");
    if (qs.size() != alphas.size()) throw DomainError("constant_coeff_inverse: one q per order");
    if (!(lambda >= 0.0)) throw DomainError("constant_coeff_inverse: lambda must be nonnegative");
    if (!(t >= 0.0)) throw DomainError("constant_coeff_inverse: t must be nonnegative");
    const auto qn = normalised(qs, "constant_coeff_inverse");
    if (t == 0.0) return w0;

    const double q1 = qs[0];
    const double a1 = alphas[0];
    const double lam = lambda / q1;
    const auto shape = kernel_shape(lam, qn, alphas);
    // s = sigma^{1/a1} turns s^{a1-1} ds into d(sigma)/a1.
    auto integrand = [&](double sigma) {
        const double s = std::pow(sigma, 1.0 / a1);
        const double bracket = v(t - s) / q1 - lam * w0;
        if (bracket == 0.0) return 0.0;
        if (s == 0.0) return bracket * rgamma(a1) / a1;
        return kernel_series(shape, a1, s) * std::pow(s, 1.0 - a1) * bracket / a1;
    };
    const double upper = std::pow(t, a1);
    const auto q = detail::integrate_finite(integrand, 0.0, upper, tolerance, "constant_coeff_inverse");
    if (q.error > 100.0 * tolerance * std::max(q.l1, 1.0))
        throw EvaluationError("constant_coeff_inverse: quadrature did not reach tolerance",
                              w0 + q.value, 0, q.error);
    return w0 + q.value;
}

double ml_lower_bound(double t, double w0, double lambda, std::span<const double> q_mins,
                      std::span<const double> alphas) {
    if (q_mins.size() != alphas.size()) throw DomainError("ml_lower_bound: one q per order");
    if (!(t >= 0.0 && w0 >= 0.0 && lambda >= 0.0))
        throw DomainError("ml_lower_bound: t, w0 and lambda must be nonnegative");
    double best = 0.0;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (q_mins[j] < 0.0) throw DomainError("ml_lower_bound: q minima must be nonnegative");
        if (q_mins[j] == 0.0) continue;
        const double arg = -lambda * std::pow(t, alphas[j]) / q_mins[j];
        best = std::max(best, ml_two_param(alphas[j], 1.0, arg));
    }
    return w0 * best;
}

}  // namespace fracadapt::specfun

#include "fracadapt/specfun.hpp"

#include "fracadapt/errors.hpp"
#include "quadrature.hpp"

#include <math.h>
#ifdef FRACADAPT_HAVE_QUADMATH
extern "C" {
#include <quadmath.h>
}
#endif

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace fracadapt::specfun {

namespace {

constexpr int kMaxOuterTerms = 2000;
constexpr int kTaylorMaxTerms = 20000;
// Beyond |x|^{1/alpha} of this size the alternating Taylor series for
// E_{alpha,beta}(-|x|) loses more digits than the integral form.
constexpr double kTaylorReach = 4.0;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

double ml_taylor(double alpha, double beta, double x) {
    const double log_abs_x = std::log(std::abs(x));
    const bool alternating = x < 0.0;
    double sum = 0.0;
    double previous = 0.0;
    for (int k = 0; k < kTaylorMaxTerms; ++k) {
        const double arg = alpha * k + beta;
        if (is_nonpositive_integer(arg)) continue;
        int sign = 1;
        const double lg = log_abs_gamma(arg, &sign);
        double term = std::exp(k * log_abs_x - lg) * sign;
        if (alternating && (k % 2 == 1)) term = -term;
        sum += term;
        const double mag = std::abs(term);
        if (k > 2 && mag <= previous && mag <= 1e-17 * std::abs(sum)) return sum;
        if (k > 2 && mag == 0.0) return sum;
        previous = mag;
    }
    throw EvaluationError("ml_two_param: Taylor series did not converge", sum, kTaylorMaxTerms,
                          previous);
}

// E_{alpha,beta}(-y), y > 0, 0 < alpha < 1, beta < 1 + alpha, from the
// Hankel contour collapsed onto the negative real axis.
double ml_negative_integral(double alpha, double beta, double y) {
    using std::numbers::pi;
    const double sb = std::sin(beta * pi);
    const double sba = std::sin((beta - alpha) * pi);
    const double ca = std::cos(alpha * pi);
    auto integrand = [=](double r) {
        if (r <= 0.0) return 0.0;
        const double ra = std::pow(r, alpha);
        const double den = ra * ra + 2.0 * y * ra * ca + y * y;
        return std::exp(-r) * std::pow(r, alpha - beta) * (ra * sb + y * sba) / den;
    };
    // The denominator is smallest where r^alpha = y; split there.
    const double peak = std::pow(y, 1.0 / alpha);
    const auto head = detail::integrate_finite(integrand, 0.0, peak, 1e-14, "ml_two_param");
    const auto tail = detail::integrate_to_infinity(integrand, peak, 1e-14, "ml_two_param");
    const double value = (head.value + tail.value) / pi;
    const double err = (head.error + tail.error) / pi;
    if (err > 1e-9 * std::max(std::abs(value), 1e-300) && err > 1e-300) {
        throw EvaluationError("ml_two_param: integral representation inaccurate", value, 0, err);
    }
    return value;
}

double ml_alpha_one(double beta, double x) {
    if (beta == 1.0) return std::exp(x);
    if (x >= -1.0) return ml_taylor(1.0, beta, x);
    if (beta < 1.0) return rgamma(beta) + x * ml_alpha_one(beta + 1.0, x);
    // E_{1,beta}(x) = Gamma(beta-1)^{-1} int_0^1 e^{xs} (1-s)^{beta-2} ds
    // Boost passes the signed distance to the nearer endpoint as the second argument.
    auto integrand = [=](double s, double sc) {
        const double one_minus_s = s > 0.5 ? sc : 1.0 - s;
        return std::exp(x * s) * std::pow(one_minus_s, beta - 2.0);
    };
    const auto q = detail::integrate_finite(integrand, 0.0, 1.0, 1e-14, "ml_two_param");
    return q.value * rgamma(beta - 1.0);
}

// Working-precision primitives for the multinomial series.
struct Double {
    using type = double;
    static double lgam(double x, int* sign) { return ::lgamma_r(x, sign); }
    static double exp(double x) { return std::exp(x); }
    static double log(double x) { return std::log(x); }
};

struct Long {
    using type = long double;
    static long double lgam(long double x, int* sign) { return ::lgammal_r(x, sign); }
    static long double exp(long double x) { return std::exp(x); }
    static long double log(long double x) { return std::log(x); }
};

#ifdef FRACADAPT_HAVE_QUADMATH
__extension__ typedef __float128 quad;

struct Quad {
    using type = quad;
    static quad lgam(quad x, int* sign) {
        // Gamma is negative on (-1,0), (-3,-2), ...
        *sign = (x < 0 && (long long)floorq(x) % 2 != 0) ? -1 : 1;
        return lgammaq(x);
    }
    static quad exp(quad x) { return expq(x); }
    static quad log(quad x) { return logq(x); }
};
#endif

// Multinomial double series for any beta0 for which the Gamma arguments are
// well defined; the public entry point restricts beta0 to (0,2).  Terms are
// formed in log space and summed in the precision P.
template <class P>
SeriesEvaluation mml_series_in(double beta0, std::span<const double> orders,
                               std::span<const double> args) {
    using R = typename P::type;
    const std::size_t m = orders.size();
    std::vector<R> log_abs_s(m), ord(m);
    std::vector<int> sign_s(m);
    std::vector<bool> zero(m);
    for (std::size_t j = 0; j < m; ++j) {
        zero[j] = args[j] == 0.0;
        log_abs_s[j] = zero[j] ? R(0) : P::log(R(std::abs(args[j])));
        sign_s[j] = args[j] < 0.0 ? -1 : 1;
        ord[j] = R(orders[j]);
    }
    std::vector<R> lf(kMaxOuterTerms + 2);
    lf[0] = 0;
    for (int k = 1; k <= kMaxOuterTerms + 1; ++k) lf[k] = lf[k - 1] + P::log(R(k));

    SeriesEvaluation out;
    R value = 0;
    int small_run = 0;
    for (int k = 0; k <= kMaxOuterTerms; ++k) {
        R outer = 0;
        // Enumerate compositions k = k_1 + ... + k_m; the last part takes the remainder.
        auto visit = [&](auto&& self, std::size_t j, int remaining, R log_mag, int sign,
                         R gamma_arg) -> void {
            if (j + 1 == m) {
                const int kj = remaining;
                if (kj > 0 && zero[j]) return;
                const R lm = log_mag - lf[kj] + kj * log_abs_s[j];
                const int sg = (kj % 2 == 1) ? sign * sign_s[j] : sign;
                const R ga = gamma_arg + ord[j] * kj;
                if (ga <= 0 && ga == R(std::nearbyint(double(ga)))) return;
                int gsign = 1;
                const R lg = P::lgam(ga, &gsign);
                const R term = R(sg * gsign) * P::exp(lf[k] + lm - lg);
                outer += term;
                ++out.terms;
                out.max_abs_term = std::max(out.max_abs_term, std::abs(double(term)));
                return;
            }
            for (int kj = 0; kj <= remaining; ++kj) {
                if (kj > 0 && zero[j]) break;
                const R lm = log_mag - lf[kj] + kj * log_abs_s[j];
                const int sg = (kj % 2 == 1) ? sign * sign_s[j] : sign;
                self(self, j + 1, remaining - kj, lm, sg, gamma_arg + ord[j] * kj);
            }
        };
        visit(visit, 0, k, R(0), 1, R(beta0));
        value += outer;
        out.value = double(value);
        out.outer_terms = k + 1;
        if (!std::isfinite(out.value)) {
            throw EvaluationError("mml_series: overflow in partial sums", out.value, k + 1,
                                  out.max_abs_term);
        }
        if (std::abs(double(outer)) < 1e-17 * (1.0 + std::abs(out.value))) {
            if (++small_run >= 3) return out;
        } else {
            small_run = 0;
        }
    }
    throw EvaluationError("mml_series: truncation cap reached without convergence", out.value,
                          kMaxOuterTerms + 1, out.max_abs_term);
}

// Sums in double and repeats in wider arithmetic when the terms dwarf the
// result: the rounding of each term's log-space exponent is amplified by the
// cancellation.
SeriesEvaluation mml_series_raw(double beta0, std::span<const double> orders,
                                std::span<const double> args) {
    auto out = mml_series_in<Double>(beta0, orders, args);
    const double scale = std::abs(out.value);
    if (!(scale > 0.0) || out.max_abs_term <= 10.0 * scale) return out;
    SeriesEvaluation wide;
#ifdef FRACADAPT_HAVE_QUADMATH
    // 113-bit arithmetic is software emulated; keep it to moderate series.
    if (out.max_abs_term > 1e3 * scale && out.terms <= 1000000)
        wide = mml_series_in<Quad>(beta0, orders, args);
    else
#endif
        wide = mml_series_in<Long>(beta0, orders, args);
    out.value = wide.value;
    return out;
}

// Inverse Laplace transform of s^{-beta} / (1 + sum a_j s^{-mu_j}) on a
// parabolic contour. With a_j >= 0 the transform has no poles off the negative
// real axis, so the trapezoid rule converges geometrically in the node count.
double f_kernel_contour(const FKernelParams& p) {
    using C = std::complex<double>;
    constexpr int n = 20;
    const double h = 3.0 / n;
    const double m = std::numbers::pi * n / (12.0 * p.t);
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const C w(1.0, k * h);
        const C s = m * w * w;
        C den = 1.0;
        for (std::size_t j = 0; j < p.mus.size(); ++j) den += p.as[j] * std::pow(s, -p.mus[j]);
        const C term = std::exp(s * p.t) * std::pow(s, -p.beta) / den * (2.0 * m * w);
        // Terms at +-u are conjugate; the contour measure carries a factor i.
        sum += (k == 0 ? 1.0 : 2.0) * term.real();
    }
    return sum * h / (2.0 * std::numbers::pi);
}

// The series is used when it converges in a few hundred shells without its
// terms growing far beyond unity.
bool f_kernel_series_is_cheap(const FKernelParams& p, std::span<const double> args) {
    double z = 0.0;
    for (double a : args) z += std::abs(a);
    if (z == 0.0) return true;
    const double mu = *std::min_element(p.mus.begin(), p.mus.end());
    const double lz = std::log(z);
    for (int n = 1; n < 300; ++n) {
        const double x = p.beta + mu * n;
        if (x <= 2.0) continue;
        const double lb = n * lz - std::lgamma(x);
        if (lb > std::log(1e3)) return false;
        if (lb < std::log(1e-17)) return true;
    }
    return false;
}

}  // namespace

double log_abs_gamma(double x, int* sign) {
    int s = 1;
    const double v = ::lgamma_r(x, &s);
    if (sign) *sign = s;
    return v;
}

double gamma(double x) { return std::tgamma(x); }

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 171.0) {
        int s = 1;
        return s * std::exp(-log_abs_gamma(x, &s));
    }
    return 1.0 / std::tgamma(x);
}

void MLParams::validate() const {
    if (!(beta0 > 0.0 && beta0 < 2.0)) throw DomainError("MLParams: beta0 must lie in (0,2)");
    if (orders.empty() || orders.size() != args.size())
        throw DomainError("MLParams: orders and args must have equal positive length");
    for (double b : orders)
        if (!(b > 0.0 && b <= 1.0)) throw DomainError("MLParams: each order must lie in (0,1]");
    for (double s : args)
        if (!std::isfinite(s)) throw DomainError("MLParams: arguments must be finite");
}

double ml_two_param(double alpha, double beta, double x) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ml_two_param: alpha must lie in (0,1]");
    if (!(beta > 0.0)) throw DomainError("ml_two_param: beta must be positive");
    if (!std::isfinite(x)) throw DomainError("ml_two_param: argument must be finite");
    if (x == 0.0) return rgamma(beta);
    if (alpha == 1.0) return ml_alpha_one(beta, x);
    if (x > 0.0) {
        if (std::pow(x, 1.0 / alpha) > 700.0)
            throw DomainError("ml_two_param: result overflows double precision");
        return ml_taylor(alpha, beta, x);
    }
    const double y = -x;
    if (std::pow(y, 1.0 / alpha) <= kTaylorReach) return ml_taylor(alpha, beta, x);
    if (beta < 1.0 + alpha) return ml_negative_integral(alpha, beta, y);
    // Lower beta with E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z.
    return (ml_two_param(alpha, beta - alpha, x) - rgamma(beta - alpha)) / x;
}

SeriesEvaluation mml_series_detailed(const MLParams& p) {
    p.validate();
    return mml_series_raw(p.beta0, p.orders, p.args);
}

double mml_series(const MLParams& p) { return mml_series_detailed(p).value; }

double f_kernel(const FKernelParams& p) {
    if (!(p.t > 0.0)) throw DomainError("f_kernel: t must be positive");
    if (p.mus.empty() || p.mus.size() != p.as.size())
        throw DomainError("f_kernel: mus and as must have equal positive length");
    if (!(p.beta < 2.0)) throw DomainError("f_kernel: beta must be below 2");
    for (double mu : p.mus)
        if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("f_kernel: each mu must lie in (0,1]");
    std::vector<double> args(p.mus.size());
    for (std::size_t j = 0; j < args.size(); ++j) args[j] = -p.as[j] * std::pow(p.t, p.mus[j]);
    const bool nonnegative = std::all_of(p.as.begin(), p.as.end(), [](double a) { return a >= 0.0; });
    if (nonnegative && !f_kernel_series_is_cheap(p, args)) return f_kernel_contour(p);
    const double e = mml_series_raw(p.beta, p.mus, args).value;
    return std::pow(p.t, p.beta - 1.0) * e;
}

}  // namespace fracadapt::specfun

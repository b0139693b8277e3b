#pragma once

// Mittag-Leffler type special functions for multiterm fractional problems.
//
// All routines are pure functions of their arguments and work in double
// precision.  Constant-coefficient coefficient lists (`qs`) follow one rule:
// homogeneous_solution, constant_coeff_inverse and ml_lower_bound take the
// full list (q_1, ..., q_l); mml_contour takes only the lower-order
// coefficients (q_2, ..., q_l) because its kernel is normalised to q_1 = 1.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracadapt::specfun {

/// Argument bundle of the multinomial Mittag-Leffler function
/// E_{(orders), beta0}(args).
struct MLParams {
    double beta0 = 1.0;
    std::vector<double> orders;
    std::vector<double> args;

    /// Throws DomainError unless beta0 in (0,2), each order in (0,1] and the
    /// two lists have equal positive length.
    void validate() const;
};

/// Parameters of t^{beta-1} E_{(mus), beta}(-a_1 t^{mu_1}, ..., -a_m t^{mu_m}).
struct FKernelParams {
    std::vector<double> mus;
    double beta = 1.0;
    std::vector<double> as;
    double t = 1.0;
};

/// S(s) = sum_j k_j s^{gamma_j} with 0 = gamma_0 < ... < gamma_n <= 1 and
/// coefficients that are positive up to some index and negative after it.
struct SignedPowerSum {
    std::vector<double> exponents;
    std::vector<double> coefficients;

    double operator()(double s) const;
    void validate() const;
};

/// Result of a multinomial series evaluation with its convergence record.
struct SeriesEvaluation {
    double value = 0.0;
    int outer_terms = 0;
    /// Individual terms summed.
    std::size_t terms = 0;
    double max_abs_term = 0.0;
};

/// Gamma and reciprocal gamma. rgamma is exactly zero at the poles.
double gamma(double x);
double rgamma(double x);
/// log|Gamma(x)|, reentrant.
double log_abs_gamma(double x, int* sign = nullptr);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(x) for alpha in (0,1].
double ml_two_param(double alpha, double beta, double x);

/// Multinomial Mittag-Leffler function by its defining double series.
double mml_series(const MLParams& p);
SeriesEvaluation mml_series_detailed(const MLParams& p);

double f_kernel(const FKernelParams& p);

/// Gauss hypergeometric 2F1(a,b;c;s) for s in [0,1].
double gauss_2f1(double a, double b, double c, double s);

/// rho_i(s) = 2F1(alpha_i, -beta; alpha1; s) - C_i s^beta, beta = 1 - alpha1,
/// C_i = Gamma(alpha1)Gamma(1-alpha_i)/Gamma(alpha1-alpha_i); zero for s >= 1.
double rho(double alpha_i, double alpha1, double s);

/// E_{(alpha_1, alpha_1-alpha_l, ..., alpha_1-alpha_2), beta}
///   (-lambda t^{alpha_1}, -q_l t^{alpha_1-alpha_l}, ..., -q_2 t^{alpha_1-alpha_2})
/// evaluated through its real-line contour integral.  `lower_qs` holds
/// (q_2, ..., q_l); `alphas` holds (alpha_1, ..., alpha_l).
double mml_contour(double t, double beta, double lambda, std::span<const double> lower_qs,
                   std::span<const double> alphas);

/// The unique positive zero of a SignedPowerSum.
double sign_change_root(const SignedPowerSum& p);

/// Solution y(t) of sum_i q_i D^{alpha_i} y + lambda y = 0, y(0) = 1.
double homogeneous_solution(double t, double lambda, std::span<const double> qs,
                            std::span<const double> alphas);

/// Solution w(t) of sum_i q_i D^{alpha_i} w + lambda w = v, w(0) = w0, for
/// constant positive q_i, through the convolution formula with the F kernel.
double constant_coeff_inverse(const std::function<double(double)>& v, double t, double lambda,
                              std::span<const double> qs, std::span<const double> alphas,
                              double w0, double tolerance = 1e-10);

/// w0 * max_j E_{alpha_j,1}(-lambda t^{alpha_j} / qmin_j); a term with
/// qmin_j == 0 contributes zero.
double ml_lower_bound(double t, double w0, double lambda, std::span<const double> q_mins,
                      std::span<const double> alphas);

}  // namespace fracadapt::specfun

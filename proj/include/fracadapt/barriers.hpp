#pragma once

// Barrier functions E and their calibration curves
//   R(t) = sum_i q_i(t) D^{alpha_i} E(t) + lambda E(t)
// used by the acceptance test ||R_h(t)|| <= TOL R(t), which gives the error
// bound ||u_h(t) - u(t)|| <= TOL E(t).

#include "fracadapt/problem.hpp"
#include "fracadapt/residual.hpp"

#include <functional>
#include <span>
#include <vector>

namespace fracadapt {

enum class BarrierKind { R0, R1, Exponential, CustomTable };

struct BarrierSpec {
    BarrierKind kind = BarrierKind::R0;
    /// R1 parameter tau > 0.
    double tau = 0.0;
    /// Exponential rate mu > 0 of E(t) = 1 - exp(-mu t).
    double mu = 10.0;
    /// CustomTable: calibration and barrier values tabulated on increasing
    /// times, linearly interpolated (held constant outside the table).
    std::vector<double> table_t, table_calibration, table_barrier;
    /// Report t^{alpha_1 - 1} instead of E_1 in R1 error bounds.
    bool report_t_power = false;

    std::vector<double> alphas;
    std::vector<std::function<double(double)>> q;
    double lambda = 0.0;

    static BarrierSpec r0(const ProblemSpec& p);
    static BarrierSpec r1(const ProblemSpec& p, double tau);
    static BarrierSpec exponential(const ProblemSpec& p, double mu = 10.0);

    void validate() const;
};

/// Calibration curve R(t), t > 0.
double calibration(double t, const BarrierSpec& spec);
/// Barrier E(t), t >= 0.
double barrier_value(double t, const BarrierSpec& spec);
/// Caputo derivative of order alpha in (0,1] of 1 - exp(-mu t), by quadrature.
double caputo_exponential_barrier(double alpha, double mu, double t);

/// True iff every sampled norm is <= tol * R at its time.
bool check_interval(const ResidualSamples& samples, double tol, const BarrierSpec& spec);
/// max over samples of norm / R.
double max_ratio(const ResidualSamples& samples, const BarrierSpec& spec);

/// E(t) * sup_{s <= t} ||R_h(s)|| / R(s) for each t in t_eval.
std::vector<double> error_bound_curve(const ResidualSamples& samples, const BarrierSpec& spec,
                                      std::span<const double> t_eval);

}  // namespace fracadapt

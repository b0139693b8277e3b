#pragma once

// Residual R_h = sum_i q_i D^{alpha_i} u_h + L u_h - f of the L1 interpolant.
//
// With g = sum_i q_i D^{alpha_i} u_h - f and g^I its piecewise-linear
// interpolant through the node values,
//   R_h(t) = g(t) - g^I(t) + [g^I(0) + L u0] (1 - t/t_1)^+,
// so L is applied to u0 only.  For alpha_1 = 1 the node values of the
// first-order term are q_1(t_j) delta^j at t_j and q_1(t_{j-1}) delta^{j-1}
// at t_{j-1}, with delta^0 := delta^1.

#include "fracadapt/l1.hpp"
#include "fracadapt/problem.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fracadapt {

enum class NormKind { L2, Linf };

struct ResidualSamples {
    std::vector<double> times;
    std::vector<double> norms;
    NormKind norm_kind = NormKind::L2;
};

/// R_h(., t) for t in (0, last committed time].
std::vector<double> residual_at(const SolutionHistory& history, const ProblemSpec& problem,
                                double t);

/// Trapezoidal discrete L2 norm with zero boundary values, or the max norm;
/// the absolute value for scalar problems.
double residual_norm(std::span<const double> field, const ProblemSpec& problem, NormKind kind);

/// Norms at t_{j-1} + i tau_j / n, i = 1..n, for every interval j.
ResidualSamples sample_norms(const SolutionHistory& history, const ProblemSpec& problem,
                             int sub_per_interval, NormKind kind);

/// Norms at the given times, all inside interval j of the history.
ResidualSamples sample_interval(const SolutionHistory& history, const ProblemSpec& problem,
                                std::size_t j, std::span<const double> times, NormKind kind);

/// Evaluates R_h repeatedly inside one interval, caching the node values of g.
class IntervalResidual {
public:
    IntervalResidual(const SolutionHistory& history, const ProblemSpec& problem, std::size_t j);
    void evaluate(double t, std::span<double> out);

private:
    void g_at(double t, std::span<double> out);

    const SolutionHistory& history_;
    const ProblemSpec& problem_;
    std::size_t j_;
    std::vector<double> g_left_, g_right_, start_term_, work_;
};

}  // namespace fracadapt

#pragma once

// L1 discretisation of sum_i q_i(t) D_t^{alpha_i} on arbitrary meshes.
//
// The Caputo derivative of order alpha < 1 of the piecewise-linear
// interpolant u_h is evaluated exactly:
//   D^alpha u_h(t) = sum_k w_k(t) (u^k - u^{k-1}),
//   w_k(t) = [(t - t_{k-1})^{1-alpha} - (t - t_k)^{1-alpha}] / (tau_k Gamma(2-alpha)),
// with the last interval truncated at t.  An order alpha_1 = 1 is the
// left-continuous backward difference (u^j - u^{j-1}) / tau_j.

#include "fracadapt/mesh.hpp"
#include "fracadapt/problem.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fracadapt {

/// Time levels of a computed solution: level j holds u_h(t_j) (dim values).
class SolutionHistory {
public:
    SolutionHistory(std::vector<double> u0, double t0 = 0.0);

    std::size_t dim() const { return dim_; }
    /// Number of stored levels (M + 1 for a complete solve on M intervals).
    std::size_t size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    double time(std::size_t j) const { return times_[j]; }
    double last_time() const { return times_.back(); }
    std::span<const double> level(std::size_t j) const {
        return {values_.data() + j * dim_, dim_};
    }
    /// Flat row-major storage, level after level.
    const std::vector<double>& values() const { return values_; }

    void push(double t, std::span<const double> v);
    void pop();

    TemporalMesh mesh() const { return TemporalMesh(times_); }
    /// Index j >= 1 with t in (t_{j-1}, t_j]; throws OutOfRangeError for t
    /// outside (0, last_time()].
    std::size_t interval_of(double t) const;
    /// The piecewise-linear interpolant at t in [0, last_time()].
    std::vector<double> interpolate(double t) const;

private:
    std::size_t dim_;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// L1 weights {w_{j,k}}_{k=1..j} (index k-1) of D^alpha at node t_j.
std::vector<double> l1_coeffs(const TemporalMesh& mesh, double alpha, std::size_t j);

/// Weights w_k(t), k = 1..j, of the Caputo derivative of the interpolant on
/// `times` at t in (t_{j-1}, t_j].  `out` must have room for j entries.
void caputo_weights_at(std::span<const double> times, std::size_t j, double alpha, double t,
                       std::span<double> out);

/// sum_i q_i(t) D^{alpha_i} u_h(t) for t in (0, last_time()] written to `out`.
/// For alpha_1 = 1 the first term is q_1(t) times the left-continuous slope.
void dt_bar_at(const SolutionHistory& history, const ProblemSpec& problem, double t,
               std::span<double> out);

/// dt_bar_at at the node t_j.
std::vector<double> apply_dt_bar(const SolutionHistory& history, std::size_t j,
                                 const ProblemSpec& problem);

/// Marches the L1 scheme one level at a time; levels can be withdrawn again,
/// which is what the adaptive algorithm needs.
class L1Stepper {
public:
    explicit L1Stepper(ProblemSpec problem);

    const ProblemSpec& problem() const { return problem_; }
    const SolutionHistory& history() const { return history_; }
    SolutionHistory release() { return std::move(history_); }

    /// Computes the level at time t > last_time() with the problem's source.
    void advance(double t);
    /// Same, with the source values f(., t) supplied by the caller.
    void advance(double t, std::span<const double> source);
    void retract() { history_.pop(); }
    void restore(double t, std::span<const double> values) { history_.push(t, values); }

    /// Promise that every future step has length tau; lets the stepper reuse
    /// the translation-invariant weights.  Steps of another length fall back
    /// to the general formula.
    void assume_uniform_steps(double tau);

private:
    void step(double t, std::span<const double> source);
    const std::vector<double>& uniform_weights(std::size_t order, std::size_t count);

    ProblemSpec problem_;
    SolutionHistory history_;
    std::vector<double> weights_;
    std::vector<double> scratch_;
    std::vector<double> rhs_;
    std::vector<double> source_;
    double uniform_tau_ = 0.0;
    std::vector<std::vector<double>> uniform_cache_;
};

/// Full solves on a given mesh; level 0 is the sampled initial data.
SolutionHistory solve_scalar(const ProblemSpec& problem, const TemporalMesh& mesh);
SolutionHistory solve_pde_1d(const ProblemSpec& problem, const TemporalMesh& mesh);
/// Dispatches on problem.is_pde().
SolutionHistory solve(const ProblemSpec& problem, const TemporalMesh& mesh);

}  // namespace fracadapt

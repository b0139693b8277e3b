#include "fracadapt/residual.hpp"

#include "fracadapt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fracadapt {

IntervalResidual::IntervalResidual(const SolutionHistory& history, const ProblemSpec& problem,
                                   std::size_t j)
    : history_(history), problem_(problem), j_(j) {
    if (j < 1 || j >= history.size()) throw OutOfRangeError("residual: interval out of range");
    const std::size_t dim = history.dim();
    g_left_.resize(dim);
    g_right_.resize(dim);
    work_.resize(dim);
    g_at(history.time(j), g_right_);
    if (j > 1) {
        g_at(history.time(j - 1), g_left_);
        return;
    }
    // Node t_0 = 0: the fractional terms vanish; a first-order term uses delta^0 := delta^1.
    problem.source(0.0, work_);
    const auto u0 = history.level(0);
    const auto u1 = history.level(1);
    const double slope_weight = problem.has_first_order_term()
                                    ? problem.q[0](0.0) / history.time(1)
                                    : 0.0;
    for (std::size_t n = 0; n < dim; ++n) g_left_[n] = slope_weight * (u1[n] - u0[n]) - work_[n];
    start_term_.resize(dim);
    problem.apply_operator(u0, start_term_);
    for (std::size_t n = 0; n < dim; ++n) start_term_[n] += g_left_[n];
}

void IntervalResidual::g_at(double t, std::span<double> out) {
    dt_bar_at(history_, problem_, t, out);
    problem_.source(t, work_);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] -= work_[n];
}

void IntervalResidual::evaluate(double t, std::span<double> out) {
    const double left = history_.time(j_ - 1);
    const double right = history_.time(j_);
    if (!(t > left && t <= right)) throw OutOfRangeError("residual: time outside the interval");
    g_at(t, out);
    const double theta = (t - left) / (right - left);
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] -= theta * g_right_[n] + (1.0 - theta) * g_left_[n];
    if (j_ == 1)
        for (std::size_t n = 0; n < out.size(); ++n) out[n] += (1.0 - theta) * start_term_[n];
}

std::vector<double> residual_at(const SolutionHistory& history, const ProblemSpec& problem,
                                double t) {
    const std::size_t j = history.interval_of(t);
    IntervalResidual r(history, problem, j);
    std::vector<double> out(history.dim());
    r.evaluate(t, out);
    return out;
}

double residual_norm(std::span<const double> field, const ProblemSpec& problem, NormKind kind) {
    if (field.size() != problem.dim()) throw DomainError("residual_norm: size mismatch");
    if (!problem.is_pde()) return std::abs(field[0]);
    if (kind == NormKind::Linf) {
        double m = 0.0;
        for (double v : field) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : field) s += v * v;
    return std::sqrt(problem.spatial->grid.h() * s);
}

ResidualSamples sample_interval(const SolutionHistory& history, const ProblemSpec& problem,
                                std::size_t j, std::span<const double> times, NormKind kind) {
    ResidualSamples out;
    out.norm_kind = kind;
    IntervalResidual r(history, problem, j);
    std::vector<double> field(history.dim());
    for (double t : times) {
        r.evaluate(t, field);
        out.times.push_back(t);
        out.norms.push_back(residual_norm(field, problem, kind));
    }
    return out;
}

ResidualSamples sample_norms(const SolutionHistory& history, const ProblemSpec& problem,
                             int sub_per_interval, NormKind kind) {
    if (sub_per_interval < 1) throw DomainError("sample_norms: need at least one sample per interval");
    ResidualSamples out;
    out.norm_kind = kind;
    std::vector<double> field(history.dim());
    for (std::size_t j = 1; j < history.size(); ++j) {
        IntervalResidual r(history, problem, j);
        const double left = history.time(j - 1);
        const double h = history.time(j) - left;
        for (int i = 1; i <= sub_per_interval; ++i) {
            const double t = i == sub_per_interval
                                 ? history.time(j)
                                 : left + h * (double(i) / sub_per_interval);
            r.evaluate(t, field);
            out.times.push_back(t);
            out.norms.push_back(residual_norm(field, problem, kind));
        }
    }
    return out;
}

}  // namespace fracadapt

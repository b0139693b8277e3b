#include "fracadapt/l1.hpp"

#include "fracadapt/errors.hpp"
#include "fracadapt/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace fracadapt {

namespace {

// (b + tau)^p - b^p without cancellation when tau << b.
double power_increment(double b, double tau, double p) {
    if (b <= 0.0) return std::pow(tau, p);
    const double ratio = tau / b;
    if (ratio > 0.5) return std::pow(b + tau, p) - std::pow(b, p);
    return std::pow(b, p) * std::expm1(p * std::log1p(ratio));
}

// Weights for k = 1..j where t_0..t_{j-1} come from `times`, t lies in
// (t_{j-1}, t_{j-1} + tau_j] and tau_j is the length of interval j.
void weights_core(const double* times, std::size_t j, double alpha, double t, double tau_j,
                  double* out) {
    const double p = 1.0 - alpha;
    const double scale = specfun::rgamma(2.0 - alpha);
    for (std::size_t k = 1; k < j; ++k) {
        const double tau = times[k] - times[k - 1];
        out[k - 1] = power_increment(t - times[k], tau, p) * scale / tau;
    }
    out[j - 1] = std::pow(t - times[j - 1], p) * scale / tau_j;
}

bool is_uniform(const TemporalMesh& mesh) {
    const double tau = mesh.step(1);
    for (std::size_t j = 2; j <= mesh.intervals(); ++j)
        if (std::abs(mesh.step(j) - tau) > 1e-12 * tau) return false;
    return true;
}

}  // namespace

SolutionHistory::SolutionHistory(std::vector<double> u0, double t0)
    : dim_(u0.size()), times_{t0}, values_(std::move(u0)) {
    if (dim_ == 0) throw DomainError("SolutionHistory: empty initial level");
}

void SolutionHistory::push(double t, std::span<const double> v) {
    if (v.size() != dim_) throw DomainError("SolutionHistory: level size mismatch");
    if (!(t > times_.back())) throw DomainError("SolutionHistory: times must increase");
    times_.push_back(t);
    values_.insert(values_.end(), v.begin(), v.end());
}

void SolutionHistory::pop() {
    if (times_.size() <= 1) throw DomainError("SolutionHistory: cannot remove the initial level");
    times_.pop_back();
    values_.resize(values_.size() - dim_);
}

std::size_t SolutionHistory::interval_of(double t) const {
    if (!(t > times_.front()) || t > times_.back())
        throw OutOfRangeError("time outside the computed range (0, t_last]");
    const auto it = std::lower_bound(times_.begin(), times_.end(), t);
    return std::size_t(it - times_.begin());
}

std::vector<double> SolutionHistory::interpolate(double t) const {
    if (t == times_.front()) return {level(0).begin(), level(0).end()};
    const std::size_t j = interval_of(t);
    const double theta = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
    std::vector<double> out(dim_);
    const auto a = level(j - 1);
    const auto b = level(j);
    for (std::size_t n = 0; n < dim_; ++n) out[n] = (1.0 - theta) * a[n] + theta * b[n];
    return out;
}

std::vector<double> l1_coeffs(const TemporalMesh& mesh, double alpha, std::size_t j) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("l1_coeffs: alpha must lie in (0,1)");
    if (j < 1 || j > mesh.intervals()) throw DomainError("l1_coeffs: level index out of range");
    std::vector<double> w(j);
    weights_core(mesh.points().data(), j, alpha, mesh[j], mesh.step(j), w.data());
    return w;
}

void caputo_weights_at(std::span<const double> times, std::size_t j, double alpha, double t,
                       std::span<double> out) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("caputo_weights_at: alpha must lie in (0,1)");
    if (j < 1 || j >= times.size()) throw DomainError("caputo_weights_at: interval out of range");
    if (!(t > times[j - 1] && t <= times[j])) throw DomainError("caputo_weights_at: t outside interval");
    if (out.size() < j) throw DomainError("caputo_weights_at: output too short");
    weights_core(times.data(), j, alpha, t, times[j] - times[j - 1], out.data());
}

void dt_bar_at(const SolutionHistory& h, const ProblemSpec& p, double t, std::span<double> out) {
    const std::size_t j = h.interval_of(t);
    const std::size_t dim = h.dim();
    const auto& times = h.times();
    const double tau_j = times[j] - times[j - 1];

    thread_local std::vector<double> w, combined;
    w.assign(j, 0.0);
    combined.assign(j, 0.0);
    const std::size_t first = p.has_first_order_term() ? 1 : 0;
    for (std::size_t i = first; i < p.orders(); ++i) {
        const double qi = p.q[i](t);
        if (qi == 0.0) continue;
        weights_core(times.data(), j, p.alphas[i], t, tau_j, w.data());
        for (std::size_t k = 0; k < j; ++k) combined[k] += qi * w[k];
    }
    if (first == 1) combined[j - 1] += p.q[0](t) / tau_j;

    std::fill(out.begin(), out.begin() + dim, 0.0);
    const double* v = h.values().data();
    for (std::size_t k = 1; k <= j; ++k) {
        const double c = combined[k - 1];
        if (c == 0.0) continue;
        const double* now = v + k * dim;
        const double* before = now - dim;
        for (std::size_t n = 0; n < dim; ++n) out[n] += c * (now[n] - before[n]);
    }
}

std::vector<double> apply_dt_bar(const SolutionHistory& h, std::size_t j, const ProblemSpec& p) {
    if (j < 1 || j >= h.size()) throw OutOfRangeError("apply_dt_bar: level index out of range");
    std::vector<double> out(h.dim());
    dt_bar_at(h, p, h.time(j), out);
    return out;
}

L1Stepper::L1Stepper(ProblemSpec problem)
    : problem_(std::move(problem)), history_(problem_.initial_values()) {
    problem_.validate();
    rhs_.resize(history_.dim());
    source_.resize(history_.dim());
    scratch_.resize(history_.dim());
}

void L1Stepper::assume_uniform_steps(double tau) {
    if (!(tau > 0.0)) throw DomainError("assume_uniform_steps: tau must be positive");
    if (history_.size() != 1) throw DomainError("assume_uniform_steps: call before the first step");
    uniform_tau_ = tau;
    uniform_cache_.assign(problem_.orders(), {});
}

const std::vector<double>& L1Stepper::uniform_weights(std::size_t order, std::size_t count) {
    auto& c = uniform_cache_[order];
    const double p = 1.0 - problem_.alphas[order];
    // c[d] = (d+1)^p - d^p.
    while (c.size() < count) {
        const double d = double(c.size());
        c.push_back(power_increment(d, 1.0, p));
    }
    return c;
}

void L1Stepper::advance(double t) {
    problem_.source(t, source_);
    step(t, source_);
}

void L1Stepper::advance(double t, std::span<const double> source) {
    if (source.size() != history_.dim()) throw DomainError("L1Stepper: source size mismatch");
    step(t, source);
}

void L1Stepper::step(double t, std::span<const double> source) {
    const std::size_t j = history_.size();
    const double t_prev = history_.last_time();
    if (!(t > t_prev)) throw DomainError("L1Stepper: new time must exceed the last level");
    const double tau_j = t - t_prev;
    if (!(tau_j > 0.0) || t_prev + tau_j == t_prev)
        throw SingularStepError("L1Stepper: step below floating-point resolution");
    const std::size_t dim = history_.dim();
    const auto& times = history_.times();

    if (uniform_tau_ > 0.0 && std::abs(tau_j - uniform_tau_) > 1e-12 * uniform_tau_)
        uniform_tau_ = 0.0;

    weights_.assign(j, 0.0);
    thread_local std::vector<double> w;
    w.resize(j);
    const std::size_t first = problem_.has_first_order_term() ? 1 : 0;
    for (std::size_t i = first; i < problem_.orders(); ++i) {
        const double qi = problem_.q[i](t);
        if (qi == 0.0) continue;
        const double alpha = problem_.alphas[i];
        if (uniform_tau_ > 0.0) {
            const auto& c = uniform_weights(i, j);
            const double scale = qi * std::pow(uniform_tau_, -alpha) * specfun::rgamma(2.0 - alpha);
            for (std::size_t k = 1; k <= j; ++k) weights_[k - 1] += scale * c[j - k];
        } else {
            weights_core(times.data(), j, alpha, t, tau_j, w.data());
            for (std::size_t k = 0; k < j; ++k) weights_[k] += qi * w[k];
        }
    }
    double diag = weights_[j - 1];
    if (first == 1) diag += problem_.q[0](t) / tau_j;

    const double* v = history_.values().data();
    const double* last = v + (j - 1) * dim;
    for (std::size_t n = 0; n < dim; ++n) rhs_[n] = source[n] + diag * last[n];
    for (std::size_t k = 1; k < j; ++k) {
        const double c = weights_[k - 1];
        if (c == 0.0) continue;
        const double* now = v + k * dim;
        const double* before = now - dim;
        for (std::size_t n = 0; n < dim; ++n) rhs_[n] -= c * (now[n] - before[n]);
    }
    if (!(diag >= 0.0) || !std::isfinite(diag))
        throw SingularStepError("L1Stepper: invalid diagonal");
    problem_.solve_shifted(diag, rhs_);
    history_.push(t, rhs_);
}

SolutionHistory solve_scalar(const ProblemSpec& problem, const TemporalMesh& mesh) {
    if (problem.is_pde()) throw DomainError("solve_scalar: problem has a spatial operator");
    return solve(problem, mesh);
}

SolutionHistory solve_pde_1d(const ProblemSpec& problem, const TemporalMesh& mesh) {
    if (!problem.is_pde()) throw DomainError("solve_pde_1d: problem has no spatial operator");
    return solve(problem, mesh);
}

SolutionHistory solve(const ProblemSpec& problem, const TemporalMesh& mesh) {
    L1Stepper stepper(problem);
    if (is_uniform(mesh)) stepper.assume_uniform_steps(mesh.step(1));
    for (std::size_t j = 1; j <= mesh.intervals(); ++j) stepper.advance(mesh[j]);
    return stepper.release();
}

}  // namespace fracadapt

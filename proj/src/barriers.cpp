#include "fracadapt/barriers.hpp"

#include "fracadapt/errors.hpp"
#include "fracadapt/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace fracadapt {

namespace {

BarrierSpec linked(const ProblemSpec& p, BarrierKind kind) {
    BarrierSpec s;
    s.kind = kind;
    s.alphas = p.alphas;
    s.q = p.q;
    s.lambda = p.lambda;
    return s;
}

double table_lookup(const std::vector<double>& t, const std::vector<double>& v, double x) {
    if (x <= t.front()) return v.front();
    if (x >= t.back()) return v.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t k = std::size_t(it - t.begin());
    const double theta = (x - t[k - 1]) / (t[k] - t[k - 1]);
    return (1.0 - theta) * v[k - 1] + theta * v[k];
}

}  // namespace

BarrierSpec BarrierSpec::r0(const ProblemSpec& p) { return linked(p, BarrierKind::R0); }

BarrierSpec BarrierSpec::r1(const ProblemSpec& p, double tau) {
    auto s = linked(p, BarrierKind::R1);
    s.tau = tau;
    s.validate();
    return s;
}

BarrierSpec BarrierSpec::exponential(const ProblemSpec& p, double mu) {
    auto s = linked(p, BarrierKind::Exponential);
    s.mu = mu;
    s.validate();
    return s;
}

void BarrierSpec::validate() const {
    if (kind == BarrierKind::CustomTable) {
        if (table_t.empty() || table_t.size() != table_calibration.size() ||
            table_t.size() != table_barrier.size())
            throw DomainError("BarrierSpec: custom tables must be nonempty and of equal length");
        for (std::size_t k = 1; k < table_t.size(); ++k)
            if (!(table_t[k] > table_t[k - 1])) throw DomainError("BarrierSpec: table times must increase");
        return;
    }
    if (alphas.empty() || q.size() != alphas.size())
        throw DomainError("BarrierSpec: orders and coefficients must be linked");
    if (kind == BarrierKind::R1) {
        if (!(alphas[0] < 1.0)) throw DomainError("BarrierSpec: R1 requires alpha_1 < 1");
        if (!(tau > 0.0)) throw DomainError("BarrierSpec: R1 requires tau > 0");
    }
    if (kind == BarrierKind::Exponential && !(mu > 0.0))
        throw DomainError("BarrierSpec: exponential barrier requires mu > 0");
}

double caputo_exponential_barrier(double alpha, double mu, double t) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("caputo_exponential_barrier: alpha must lie in (0,1]");
    if (!(t >= 0.0)) throw DomainError("caputo_exponential_barrier: t must be nonnegative");
    if (alpha == 1.0) return mu * std::exp(-mu * t);
    if (t == 0.0) return 0.0;
    // With (t-s)^p = t^p u the kernel (t-s)^{-alpha} ds becomes (t^p/p) du on [0,1].
    const double p = 1.0 - alpha;
    auto integrand = [=](double u) {
        return mu * std::exp(-mu * t * (1.0 - std::pow(u, 1.0 / p)));
    };
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
        integrand, 0.0, 1.0, 15, 1e-13, &error);
    if (!std::isfinite(value) || error > 1e-10 * std::max(std::abs(value), 1e-300))
        throw EvaluationError("caputo_exponential_barrier: quadrature inaccurate", value, 0, error);
    return value * std::pow(t, p) / p * specfun::rgamma(1.0 - alpha);
}

double barrier_value(double t, const BarrierSpec& spec) {
    if (!(t >= 0.0)) throw DomainError("barrier_value: t must be nonnegative");
    switch (spec.kind) {
    case BarrierKind::R0:
        return t > 0.0 ? 1.0 : 0.0;
    case BarrierKind::R1:
        return std::pow(std::max(spec.tau, t), spec.alphas[0] - 1.0);
    case BarrierKind::Exponential:
        return -std::expm1(-spec.mu * t);
    case BarrierKind::CustomTable:
        return table_lookup(spec.table_t, spec.table_barrier, t);
    }
    return 0.0;
}

double calibration(double t, const BarrierSpec& spec) {
    if (!(t > 0.0)) throw DomainError("calibration: t must be positive");
    const std::size_t l = spec.alphas.size();
    switch (spec.kind) {
    case BarrierKind::R0: {
        double r = spec.lambda;
        const std::size_t first = spec.alphas[0] == 1.0 ? 1 : 0;
        for (std::size_t i = first; i < l; ++i)
            r += spec.q[i](t) * std::pow(t, -spec.alphas[i]) * specfun::rgamma(1.0 - spec.alphas[i]);
        return r;
    }
    case BarrierKind::R1: {
        const double a1 = spec.alphas[0];
        const double beta = 1.0 - a1;
        const double hat = spec.tau / t;
        double sum = 0.0;
        for (std::size_t i = 0; i < l; ++i) {
            const double qi = spec.q[i](t);
            if (qi == 0.0) continue;
            const double rho = specfun::rho(spec.alphas[i], a1, hat);
            sum += qi * std::pow(t, -spec.alphas[i]) * (1.0 - rho) *
                   specfun::rgamma(1.0 - spec.alphas[i]);
        }
        return spec.lambda * barrier_value(t, spec) + std::pow(spec.tau, -beta) * sum;
    }
    case BarrierKind::Exponential: {
        double r = spec.lambda * barrier_value(t, spec);
        for (std::size_t i = 0; i < l; ++i) {
            const double qi = spec.q[i](t);
            if (qi == 0.0) continue;
            r += qi * caputo_exponential_barrier(spec.alphas[i], spec.mu, t);
        }
        return r;
    }
    case BarrierKind::CustomTable:
        return table_lookup(spec.table_t, spec.table_calibration, t);
    }
    return 0.0;
}

bool check_interval(const ResidualSamples& samples, double tol, const BarrierSpec& spec) {
    if (!(tol > 0.0)) throw DomainError("check_interval: tol must be positive");
    for (std::size_t k = 0; k < samples.times.size(); ++k)
        if (!(samples.norms[k] <= tol * calibration(samples.times[k], spec))) return false;
    return true;
}

double max_ratio(const ResidualSamples& samples, const BarrierSpec& spec) {
    double m = 0.0;
    for (std::size_t k = 0; k < samples.times.size(); ++k)
        m = std::max(m, samples.norms[k] / calibration(samples.times[k], spec));
    return m;
}

std::vector<double> error_bound_curve(const ResidualSamples& samples, const BarrierSpec& spec,
                                      std::span<const double> t_eval) {
    // Running supremum of the ratio over increasing sample times.
    std::vector<std::pair<double, double>> running;
    running.reserve(samples.times.size());
    for (std::size_t k = 0; k < samples.times.size(); ++k)
        running.emplace_back(samples.times[k], samples.norms[k] / calibration(samples.times[k], spec));
    std::sort(running.begin(), running.end());
    for (std::size_t k = 1; k < running.size(); ++k)
        running[k].second = std::max(running[k].second, running[k - 1].second);

    std::vector<double> out;
    out.reserve(t_eval.size());
    for (double t : t_eval) {
        const auto it = std::upper_bound(running.begin(), running.end(), t,
                                         [](double x, const auto& e) { return x < e.first; });
        const double sup = it == running.begin() ? 0.0 : std::prev(it)->second;
        double e = barrier_value(t, spec);
        if (spec.kind == BarrierKind::R1 && spec.report_t_power && t > 0.0)
            e = std::pow(t, spec.alphas[0] - 1.0);
        out.push_back(e * sup);
    }
    return out;
}

}  // namespace fracadapt

#include "fracadapt/problem.hpp"

#include "fracadapt/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fracadapt {

void SpatialGrid1D::validate() const {
    if (N < 1) throw DomainError("SpatialGrid1D: N must be at least 1");
    if (!(b > a)) throw DomainError("SpatialGrid1D: need a < b");
}

void ProblemSpec::validate() const {
    if (alphas.empty()) throw DomainError("ProblemSpec: at least one order required");
    if (q.size() != alphas.size()) throw DomainError("ProblemSpec: one coefficient per order");
    if (!(alphas[0] > 0.0 && alphas[0] <= 1.0)) throw DomainError("ProblemSpec: alpha_1 must lie in (0,1]");
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (!(alphas[i] > 0.0 && alphas[i] < alphas[i - 1]))
            throw DomainError("ProblemSpec: orders must decrease strictly and stay positive");
    if (!(T > 0.0)) throw DomainError("ProblemSpec: T must be positive");
    if (!(lambda >= 0.0)) throw DomainError("ProblemSpec: lambda must be nonnegative");
    if (!f || !u0) throw DomainError("ProblemSpec: f and u0 are required");
    for (const auto& qi : q)
        if (!qi) throw DomainError("ProblemSpec: empty coefficient function");
    constexpr int samples = 257;
    for (int k = 0; k < samples; ++k) {
        const double t = T * k / (samples - 1);
        double total = 0.0;
        for (const auto& qi : q) {
            const double v = qi(t);
            if (!(v >= 0.0)) throw DomainError("ProblemSpec: coefficients must be nonnegative");
            total += v;
        }
        if (!(total > 0.0)) throw DomainError("ProblemSpec: coefficients must not vanish together");
    }
    if (spatial) {
        spatial->grid.validate();
        if (!(spatial->c >= 0.0)) throw DomainError("ProblemSpec: c must be nonnegative");
        // lambda bounds L from below: the first Dirichlet eigenvalue plus c.
        const double width = spatial->grid.b - spatial->grid.a;
        const double lowest = std::numbers::pi * std::numbers::pi / (width * width) + spatial->c;
        if (lambda > lowest * (1.0 + 1e-12))
            throw DomainError("ProblemSpec: lambda exceeds the lowest eigenvalue of L");
    }
}

std::vector<double> ProblemSpec::initial_values() const {
    if (!spatial) return {u0(0.0)};
    std::vector<double> v(spatial->grid.N);
    for (int i = 0; i < spatial->grid.N; ++i) v[i] = u0(spatial->grid.x(i));
    return v;
}

void ProblemSpec::source(double t, std::span<double> out) const {
    if (!spatial) {
        out[0] = f(0.0, t);
        return;
    }
    for (int i = 0; i < spatial->grid.N; ++i) out[i] = f(spatial->grid.x(i), t);
}

void ProblemSpec::apply_operator(std::span<const double> v, std::span<double> out) const {
    if (!spatial) {
        out[0] = lambda * v[0];
        return;
    }
    const int n = spatial->grid.N;
    const double h = spatial->grid.h();
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < n; ++i) {
        const double left = i > 0 ? v[i - 1] : 0.0;
        const double right = i + 1 < n ? v[i + 1] : 0.0;
        out[i] = (2.0 * v[i] - left - right) * inv_h2 + spatial->c * v[i];
    }
}

void ProblemSpec::solve_shifted(double d, std::span<double> rhs) const {
    if (!spatial) {
        const double diag = d + lambda;
        if (!(diag > 0.0) || !std::isfinite(diag))
            throw SingularStepError("time step produced a nonpositive diagonal");
        rhs[0] /= diag;
        return;
    }
    // Thomas elimination for the constant tridiagonal matrix
    // [-1/h^2, d + c + 2/h^2, -1/h^2].
    const int n = spatial->grid.N;
    const double h = spatial->grid.h();
    const double off = -1.0 / (h * h);
    const double diag = d + spatial->c + 2.0 / (h * h);
    thread_local std::vector<double> cprime;
    cprime.resize(n);
    double denom = diag;
    if (!(denom > 0.0)) throw SingularStepError("tridiagonal solve: nonpositive pivot");
    cprime[0] = off / denom;
    rhs[0] /= denom;
    for (int i = 1; i < n; ++i) {
        denom = diag - off * cprime[i - 1];
        if (!(denom > 0.0)) throw SingularStepError("tridiagonal solve: nonpositive pivot");
        cprime[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    for (int i = n - 2; i >= 0; --i) rhs[i] -= cprime[i] * rhs[i + 1];
}

}  // namespace fracadapt

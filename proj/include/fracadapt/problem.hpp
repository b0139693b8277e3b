#pragma once

// Problem data for
//   sum_i q_i(t) D_t^{alpha_i} u + L u = f,   u(0) = u0,
// either as a scalar initial-value problem (L u = lambda u) or on an
// interval with L = -d^2/dx^2 + c and homogeneous Dirichlet conditions.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fracadapt {

/// Uniform grid of N interior points on (a,b); boundary values are zero.
struct SpatialGrid1D {
    double a = 0.0;
    double b = 1.0;
    int N = 1;

    double h() const { return (b - a) / (N + 1); }
    /// Interior point i = 0..N-1.
    double x(int i) const { return a + (i + 1) * h(); }
    void validate() const;
};

struct Laplace1D {
    SpatialGrid1D grid;
    double c = 0.0;
};

struct ProblemSpec {
    /// alpha_1 > alpha_2 > ... > alpha_l > 0 with alpha_1 <= 1.
    std::vector<double> alphas;
    std::vector<std::function<double(double)>> q;
    /// Lower bound of L.  For scalar problems L is multiplication by lambda.
    double lambda = 0.0;
    /// f(x, t); scalar problems are called with x = 0.
    std::function<double(double, double)> f;
    /// u0(x); scalar problems are called with x = 0.
    std::function<double(double)> u0;
    double T = 1.0;
    std::optional<Laplace1D> spatial;

    /// Checks the ordering of the orders, the sign conditions on q at a sample
    /// of times and the consistency of lambda with L.  Throws DomainError.
    void validate() const;

    bool is_pde() const { return spatial.has_value(); }
    std::size_t dim() const { return spatial ? std::size_t(spatial->grid.N) : 1; }
    bool has_first_order_term() const { return !alphas.empty() && alphas[0] == 1.0; }
    std::size_t orders() const { return alphas.size(); }

    /// u0 sampled at the grid (or the scalar value).
    std::vector<double> initial_values() const;
    /// f(., t) sampled at the grid into `out` (size dim()).
    void source(double t, std::span<double> out) const;
    /// out = L v.
    void apply_operator(std::span<const double> v, std::span<double> out) const;
    /// Solves (d + L) x = rhs in place; d > 0 is a scalar shift.
    void solve_shifted(double d, std::span<double> rhs) const;
};

}  // namespace fracadapt

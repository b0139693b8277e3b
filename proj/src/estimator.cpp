#include "fracadapt/estimator.hpp"

#include "fracadapt/errors.hpp"

#include <cmath>

namespace fracadapt {

std::vector<double> solve_companion(const ProblemSpec& problem, const TemporalMesh& fine_mesh,
                                    const std::vector<double>& values) {
    if (values.size() != fine_mesh.intervals())
        throw DomainError("solve_companion: one residual value per fine node required");
    ProblemSpec scalar;
    scalar.alphas = problem.alphas;
    scalar.q = problem.q;
    scalar.lambda = problem.lambda;
    scalar.T = fine_mesh.final_time();
    scalar.u0 = [](double) { return 0.0; };
    scalar.f = [](double, double) { return 0.0; };

    L1Stepper stepper(scalar);
    const double tau = fine_mesh.step(1);
    bool uniform = true;
    for (std::size_t j = 2; j <= fine_mesh.intervals() && uniform; ++j)
        uniform = std::abs(fine_mesh.step(j) - tau) <= 1e-12 * tau;
    if (uniform) stepper.assume_uniform_steps(tau);
    for (std::size_t j = 1; j <= fine_mesh.intervals(); ++j) {
        const double source = values[j - 1];
        stepper.advance(fine_mesh[j], std::span<const double>(&source, 1));
    }
    const auto& h = stepper.history();
    std::vector<double> out(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) out[j] = h.level(j)[0];
    return out;
}

EstimatorResult estimate_on_mesh(const ProblemSpec& problem, const SolutionHistory& history,
                                 int n_sub, NormKind kind) {
    if (n_sub < 1) throw DomainError("estimate_on_mesh: n_sub must be at least 1");
    const TemporalMesh coarse = history.mesh();
    TemporalMesh fine = mesh::refine(coarse, n_sub);
    auto samples = sample_norms(history, problem, n_sub + 1, kind);
    auto estimate = solve_companion(problem, fine, samples.norms);
    return EstimatorResult{std::move(fine), std::move(estimate), std::move(samples), n_sub + 1};
}

}  // namespace fracadapt

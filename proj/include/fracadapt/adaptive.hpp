#pragma once

// Adaptive construction of a temporal mesh on which
//   ||R_h(t)|| <= TOL * R(t)   for all sampled t in (t_{m-1}, t_m),
// growing a successful step by Q and shrinking a failed one by Q, with one
// level of backtracking state.

#include "fracadapt/barriers.hpp"
#include "fracadapt/errors.hpp"
#include "fracadapt/l1.hpp"
#include "fracadapt/mesh.hpp"
#include "fracadapt/problem.hpp"
#include "fracadapt/residual.hpp"

#include <cstddef>
#include <vector>

namespace fracadapt {

struct AdaptiveConfig {
    double tol = 1e-3;
    double Q = 1.1;
    /// First trial step; 0 selects T / 1024.
    double tau_star = 0.0;
    /// Steps are not shrunk below this length.
    double tau_star_star = 0.0;
    BarrierSpec barrier;
    /// For R1: bind tau to this multiple of the first step (0 keeps barrier.tau).
    double r1_tau_factor = 5.0;
    /// Equispaced interior samples per trial interval.
    int samples_per_interval = 8;
    /// Extra samples t_1 2^{-k}, k = 1..n, on the first interval.
    int first_interval_extra = 8;
    std::size_t max_levels = 100000;
    NormKind norm = NormKind::L2;

    void validate(double T) const;
};

struct LevelRecord {
    double t = 0.0;
    int attempts = 0;
    /// max ||R_h|| / R over the accepted interval's samples.
    double ratio = 0.0;
    /// False only when the step hit tau_star_star while still failing.
    bool passed = true;
};

struct AdaptiveTrace {
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::vector<LevelRecord> levels;
};

struct AdaptiveResult {
    TemporalMesh mesh;
    SolutionHistory history;
    AdaptiveTrace trace;
    /// The barrier finally used (R1 carries its bound tau).
    BarrierSpec barrier;
};

/// Raised when max_levels is exceeded or a step collapses below the
/// floating-point resolution; carries the trace so far.
class AdaptiveError : public Error {
public:
    AdaptiveError(const std::string& what, AdaptiveTrace trace)
        : Error(what), trace_(std::move(trace)) {}
    const AdaptiveTrace& trace() const noexcept { return trace_; }

private:
    AdaptiveTrace trace_;
};

class NonterminationError : public AdaptiveError {
public:
    using AdaptiveError::AdaptiveError;
};

class StepCollapseError : public AdaptiveError {
public:
    using AdaptiveError::AdaptiveError;
};

AdaptiveResult run_adaptive(const ProblemSpec& problem, const AdaptiveConfig& config);

/// Sample times used to test the interval (left, right]; `first` adds the
/// geometric samples near t = 0.
std::vector<double> check_times(double left, double right, const AdaptiveConfig& config,
                                bool first);

}  // namespace fracadapt

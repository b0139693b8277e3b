#pragma once

// Catalogue of the six test problems and the pipeline that solves them,
// compares against a fine reference solution and writes CSV reports.

#include "fracadapt/adaptive.hpp"
#include "fracadapt/barriers.hpp"
#include "fracadapt/estimator.hpp"
#include "fracadapt/l1.hpp"
#include "fracadapt/mesh.hpp"
#include "fracadapt/problem.hpp"
#include "fracadapt/residual.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracadapt {

enum class MeshKind { Adaptive, Graded, Uniform };

struct RunConfig {
    int example = 1;
    /// alpha_1 for Examples 1-4 (alpha_2 = 2 alpha / 3); alpha_2 for
    /// Examples 5 and 6, where alpha_1 = 1.
    double alpha = 0.4;
    double tol = 1e-3;
    BarrierKind barrier = BarrierKind::R0;
    double mu = 10.0;
    /// Amplitude of q_1 in Examples 5 and 6.
    double c1 = 0.5;
    /// Example 2 with f(t) = cos(5 t^2).
    bool oscillating_source = false;
    /// Initial value of the scalar examples.
    double u0 = 0.0;

    MeshKind mesh = MeshKind::Adaptive;
    /// Graded-mesh exponent; 0 selects (2 - a)/a for the singular order a.
    double grading = 0.0;
    int M = 64;
    int N = 128;

    int reference_scale = 8;
    int reference_base = 1024;
    double tau_star = 0.0;
    double Q = 1.1;
    int samples_per_interval = 8;
    NormKind norm = NormKind::L2;
    /// Estimator refinement; 0 disables, Example 6 enables it by default.
    std::optional<int> estimator_n_sub;
    /// Samples per interval for the reported bound curve.
    int bound_samples = 16;
    std::string out_dir;

    void validate() const;
};

struct ErrorRow {
    double t = 0.0;
    double error = 0.0;
    double bound = 0.0;
    double estimate = 0.0;
};

struct ErrorReport {
    double max_node_error = 0.0;
    std::vector<ErrorRow> rows;
    std::size_t M = 0;
    int N = 0;
    double runtime_seconds = 0.0;
    std::size_t rejected_steps = 0;
    /// tau of the R1 barrier actually used (0 otherwise).
    double r1_tau = 0.0;
    bool has_estimate = false;
};

/// Everything a run produced, for callers that need more than the report.
struct RunOutput {
    ProblemSpec problem;
    BarrierSpec barrier;
    SolutionHistory history;
    SolutionHistory reference;
    ErrorReport report;
    std::optional<EstimatorResult> estimator;
};

ProblemSpec make_example(const RunConfig& config);
/// The order that governs the initial singularity of the example's solution.
double singular_order(const RunConfig& config);

/// L1 solve on the graded mesh with scale * max(M_run, base) intervals and
/// r = (2 - a)/a (uniform when a >= 1), with the nodes of `run_mesh` injected.
SolutionHistory reference_solution(const ProblemSpec& problem, int scale, double singular,
                                   const TemporalMesh* run_mesh = nullptr, int base = 1024);

/// Max over the run nodes t_j > 0 of ||u_run(t_j) - u_ref(t_j)||; the reference
/// must contain every run node.  Fills per-node errors into `errors` if given.
double node_errors(const ProblemSpec& problem, const SolutionHistory& run,
                   const SolutionHistory& reference, NormKind kind,
                   std::vector<double>* errors = nullptr);

RunOutput execute(const RunConfig& config);
/// execute() plus CSV output when config.out_dir is set.
ErrorReport run_example(const RunConfig& config);

/// Least-squares slope of log|u(t) - u(0)| against log t over one decade of
/// early levels (component 0 of the levels).
double fit_initial_exponent(const SolutionHistory& history);

/// The decade used by fit_initial_exponent ends at max(upper_fraction * T,
/// eighth level time).
double fit_initial_exponent(const SolutionHistory& history, double upper_fraction);

void write_outputs(const RunConfig& config, const RunOutput& out);

std::string to_string(BarrierKind kind);
std::string to_string(MeshKind kind, double grading, int M);
BarrierKind parse_barrier(const std::string& s);
/// Parses "adaptive", "graded:R" or "uniform:M" into the config.
void parse_mesh(const std::string& s, RunConfig& config);

RunConfig config_from_json(const std::string& text, RunConfig base = {});
std::string config_to_json(const RunConfig& config);

}  // namespace fracadapt

#pragma once

// A posteriori estimate on a prescribed mesh: the scalar companion problem
//   sum_i q_i(t) D^{alpha_i} E + lambda E = ||R_h(t)||,  E(0) = 0,
// solved by the L1 scheme on a refined copy of the mesh bounds the error.

#include "fracadapt/l1.hpp"
#include "fracadapt/mesh.hpp"
#include "fracadapt/problem.hpp"
#include "fracadapt/residual.hpp"

#include <vector>

namespace fracadapt {

struct EstimatorResult {
    TemporalMesh fine_mesh;
    /// E_h at every fine node, E_h(0) = 0.
    std::vector<double> estimate;
    ResidualSamples residual_input;
    /// Fine nodes per coarse interval (n_sub + 1).
    int stride = 1;

    /// E_h at the coarse node j.
    double at_coarse_node(std::size_t j) const { return estimate[j * stride]; }
};

EstimatorResult estimate_on_mesh(const ProblemSpec& problem, const SolutionHistory& history,
                                 int n_sub = 15, NormKind kind = NormKind::L2);

/// Solves the companion problem for residual norms given at the fine nodes
/// (values[k] belongs to fine_mesh[k + 1]).
std::vector<double> solve_companion(const ProblemSpec& problem, const TemporalMesh& fine_mesh,
                                    const std::vector<double>& values);

}  // namespace fracadapt

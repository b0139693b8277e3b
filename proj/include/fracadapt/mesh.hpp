#pragma once

#include <cstddef>
#include <vector>

namespace fracadapt {

/// Temporal mesh 0 = t_0 < t_1 < ... < t_M = T stored as absolute times.
class TemporalMesh {
public:
    /// Throws DomainError unless the points start at 0, increase strictly
    /// and contain at least two entries.
    explicit TemporalMesh(std::vector<double> points);

    const std::vector<double>& points() const { return points_; }
    double operator[](std::size_t j) const { return points_[j]; }
    /// Number of intervals M.
    std::size_t intervals() const { return points_.size() - 1; }
    std::size_t size() const { return points_.size(); }
    double final_time() const { return points_.back(); }
    /// t_j - t_{j-1}, 1 <= j <= M.
    double step(std::size_t j) const { return points_[j] - points_[j - 1]; }

    bool operator==(const TemporalMesh&) const = default;

private:
    std::vector<double> points_;
};

namespace mesh {

/// t_k = kT/M.
TemporalMesh uniform(int M, double T);
/// t_k = T (k/M)^r, r >= 1; r == 1 reproduces uniform() exactly.
TemporalMesh graded(int M, double r, double T);
/// Inserts n_sub equidistant points inside every interval.
TemporalMesh refine(const TemporalMesh& mesh, int n_sub);
/// Sorted union of two meshes over the same [0,T]; points closer than
/// `merge_gap` (relative to T) to an existing point are dropped.
TemporalMesh merge(const TemporalMesh& a, const TemporalMesh& b, double merge_gap = 1e-14);

}  // namespace mesh

}  // namespace fracadapt

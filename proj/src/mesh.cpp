#include "fracadapt/mesh.hpp"

#include "fracadapt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fracadapt {

TemporalMesh::TemporalMesh(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw DomainError("TemporalMesh: need at least two points");
    if (points_.front() != 0.0) throw DomainError("TemporalMesh: first point must be 0");
    for (std::size_t j = 1; j < points_.size(); ++j) {
        if (!(points_[j] > points_[j - 1]) || !std::isfinite(points_[j]))
            throw DomainError("TemporalMesh: points must increase strictly");
    }
}

namespace mesh {

TemporalMesh uniform(int M, double T) { return graded(M, 1.0, T); }

TemporalMesh graded(int M, double r, double T) {
    if (M < 1) throw DomainError("mesh: M must be at least 1");
    if (!(r >= 1.0)) throw DomainError("mesh: grading exponent must be >= 1");
    if (!(T > 0.0)) throw DomainError("mesh: T must be positive");
    std::vector<double> t(M + 1);
    for (int k = 0; k <= M; ++k) {
        const double s = double(k) / M;
        t[k] = T * (r == 1.0 ? s : std::pow(s, r));
    }
    t[M] = T;
    return TemporalMesh(std::move(t));
}

TemporalMesh refine(const TemporalMesh& m, int n_sub) {
    if (n_sub < 1) throw DomainError("mesh::refine: n_sub must be at least 1");
    const auto& p = m.points();
    std::vector<double> t;
    t.reserve(m.intervals() * (n_sub + 1) + 1);
    t.push_back(p[0]);
    for (std::size_t j = 1; j < p.size(); ++j) {
        const double h = p[j] - p[j - 1];
        for (int i = 1; i <= n_sub; ++i) t.push_back(p[j - 1] + h * (double(i) / (n_sub + 1)));
        t.push_back(p[j]);
    }
    return TemporalMesh(std::move(t));
}

TemporalMesh merge(const TemporalMesh& a, const TemporalMesh& b, double merge_gap) {
    if (a.final_time() != b.final_time()) throw DomainError("mesh::merge: final times differ");
    std::vector<double> all;
    all.reserve(a.size() + b.size());
    std::merge(a.points().begin(), a.points().end(), b.points().begin(), b.points().end(),
               std::back_inserter(all));
    const double gap = merge_gap * a.final_time();
    // Points of `a` win over nearby points of `b` so that a's nodes survive exactly.
    std::vector<double> out;
    out.reserve(all.size());
    const auto in_a = [&](double x) {
        return std::binary_search(a.points().begin(), a.points().end(), x);
    };
    for (double x : all) {
        if (!out.empty() && x - out.back() <= gap) {
            if (in_a(x) && !in_a(out.back())) out.back() = x;
            continue;
        }
        out.push_back(x);
    }
    return TemporalMesh(std::move(out));
}

}  // namespace mesh

}  // namespace fracadapt

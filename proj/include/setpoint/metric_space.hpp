#pragma once

#include <memory>
#include <string>
#include <vector>

#include "setpoint/common.hpp"

namespace setpoint {

enum class Norm { L1, L2, LInf, Lp };

std::string norm_name(Norm n);
Norm parse_norm(const std::string& name);

struct MetricViolation {
    enum class Axiom { Diagonal, Symmetry, Positivity, Triangle };
    Axiom axiom;
    int i = -1, j = -1, k = -1;
    double lhs = 0.0, rhs = 0.0;
    std::string describe() const;
};

struct MetricValidation {
    std::vector<MetricViolation> violations;
    bool valid() const { return violations.empty(); }
    std::string summary() const;
};

// Scans every axiom over the full matrix; throws ValidationError when the
// matrix is not square.
MetricValidation validate_metric(const std::vector<std::vector<double>>& d,
                                 double tolerance = kDefaultTolerance);

// Finite point universe with a metric. Matrix spaces are validated at
// construction; embedded spaces compute norm distances on demand.
// Immutable after construction.
class MetricSpace {
public:
    static MetricSpace from_matrix(std::vector<std::vector<double>> d,
                                   double tolerance = kDefaultTolerance);
    static MetricSpace from_points(std::vector<std::vector<double>> points, Norm norm,
                                   double p = 2.0, double tolerance = kDefaultTolerance);

    int size() const { return size_; }
    double tolerance() const { return tolerance_; }
    bool is_embedded() const { return embedded_; }

    double dist(int i, int j) const;

    Norm norm() const { return norm_; }
    double norm_p() const { return p_; }
    int dim() const;
    const std::vector<double>& coords(int i) const;

    // Distance between two coordinate vectors under the space norm
    // (embedded spaces only).
    double norm_dist(const std::vector<double>& a, const std::vector<double>& b) const;

private:
    MetricSpace() = default;

    bool embedded_ = false;
    int size_ = 0;
    double tolerance_ = kDefaultTolerance;
    std::vector<std::vector<double>> d_;       // matrix form
    std::vector<std::vector<double>> points_;  // embedded form
    Norm norm_ = Norm::L2;
    double p_ = 2.0;
};

using SpacePtr = std::shared_ptr<const MetricSpace>;

// Nonempty sorted duplicate-free set of point indices into a space.
class PointSet {
public:
    PointSet(std::vector<int> indices, int space_size);
    static PointSet all(int space_size);
    static PointSet single(int i, int space_size);

    const std::vector<int>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    int operator[](std::size_t k) const { return indices_[k]; }
    bool contains(int i) const;

    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }

    bool operator==(const PointSet& other) const { return indices_ == other.indices_; }

private:
    std::vector<int> indices_;
};

// min over a of d(i,a); zero exactly on members.
double point_set_dist(const MetricSpace& space, int i, const PointSet& a);

// max of the two one-sided deviations between nonempty sets.
double hausdorff(const MetricSpace& space, const PointSet& a, const PointSet& b);

// All members of `a` attaining d(i,a) within tolerance, ascending.
PointSet nearest_points(const MetricSpace& space, int i, const PointSet& a);

// Smallest-index member of `a` attaining the exact minimum distance to i.
int nearest_point(const MetricSpace& space, int i, const PointSet& a);

// All s with d(i,s) + d(s,j) <= d(i,j) + tolerance; always contains i and j.
PointSet metric_segment(const MetricSpace& space, int i, int j);

struct ChebyshevResult {
    double radius;
    PointSet centers;
};

// radius = min over z in pool of max over a in A of d(z,a);
// centers = every pool minimizer within tolerance, ascending.
ChebyshevResult chebyshev(const MetricSpace& space, const PointSet& a, const PointSet& pool);

}  // namespace setpoint

#include "setpoint/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace setpoint {

std::string norm_name(Norm n) {
    switch (n) {
        case Norm::L1: return "l1";
        case Norm::L2: return "l2";
        case Norm::LInf: return "linf";
        case Norm::Lp: return "lp";
    }
    return "l2";
}

Norm parse_norm(const std::string& name) {
    if (name == "l1") return Norm::L1;
    if (name == "l2") return Norm::L2;
    if (name == "linf") return Norm::LInf;
    if (name == "lp") return Norm::Lp;
    throw ValidationError("unknown norm tag: " + name);
}

std::string MetricViolation::describe() const {
    std::ostringstream os;
    switch (axiom) {
        case Axiom::Diagonal:
            os << "nonzero diagonal at (" << i << "," << i << "): " << lhs;
            break;
        case Axiom::Symmetry:
            os << "symmetry violation at (" << i << "," << j << "): " << lhs << " != " << rhs;
            break;
        case Axiom::Positivity:
            os << "nonpositive off-diagonal at (" << i << "," << j << "): " << lhs;
            break;
        case Axiom::Triangle:
            os << "triangle violation at (" << i << "," << j << "," << k << "): " << lhs
               << " > " << rhs;
            break;
    }
    return os.str();
}

std::string MetricValidation::summary() const {
    std::ostringstream os;
    for (std::size_t n = 0; n < violations.size(); ++n) {
        if (n) os << "; ";
        os << violations[n].describe();
    }
    return os.str();
}

MetricValidation validate_metric(const std::vector<std::vector<double>>& d, double tolerance) {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(d[i].size()) != n) {
            throw ValidationError("distance matrix is not square: row " + std::to_string(i) +
                                  " has " + std::to_string(d[i].size()) + " entries, expected " +
                                  std::to_string(n));
        }
    }
    MetricValidation report;
    for (int i = 0; i < n; ++i) {
        if (std::abs(d[i][i]) > tolerance) {
            report.violations.push_back(
                {MetricViolation::Axiom::Diagonal, i, i, -1, d[i][i], 0.0});
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(d[i][j] - d[j][i]) > tolerance) {
                report.violations.push_back(
                    {MetricViolation::Axiom::Symmetry, i, j, -1, d[i][j], d[j][i]});
            }
            if (d[i][j] <= tolerance) {
                report.violations.push_back(
                    {MetricViolation::Axiom::Positivity, i, j, -1, d[i][j], 0.0});
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double rhs = d[i][k] + d[k][j];
                if (d[i][j] > rhs + tolerance) {
                    report.violations.push_back(
                        {MetricViolation::Axiom::Triangle, i, j, k, d[i][j], rhs});
                }
            }
        }
    }
    return report;
}

MetricSpace MetricSpace::from_matrix(std::vector<std::vector<double>> d, double tolerance) {
    if (d.empty()) throw ValidationError("distance matrix is empty");
    if (tolerance < 0) throw ValidationError("tolerance must be nonnegative");
    const MetricValidation report = validate_metric(d, tolerance);
    if (!report.valid()) {
        throw ValidationError("invalid metric: " + report.summary());
    }
    MetricSpace s;
    s.embedded_ = false;
    s.size_ = static_cast<int>(d.size());
    s.tolerance_ = tolerance;
    s.d_ = std::move(d);
    return s;
}

MetricSpace MetricSpace::from_points(std::vector<std::vector<double>> points, Norm norm,
                                     double p, double tolerance) {
    if (points.empty()) throw ValidationError("point list is empty");
    if (tolerance < 0) throw ValidationError("tolerance must be nonnegative");
    if (norm == Norm::Lp && p < 1.0) throw ValidationError("lp norm requires p >= 1");
    const std::size_t dim = points[0].size();
    if (dim == 0) throw ValidationError("points must have at least one coordinate");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) {
            throw ValidationError("point " + std::to_string(i) + " has dimension " +
                                  std::to_string(points[i].size()) + ", expected " +
                                  std::to_string(dim));
        }
    }
    MetricSpace s;
    s.embedded_ = true;
    s.size_ = static_cast<int>(points.size());
    s.tolerance_ = tolerance;
    s.points_ = std::move(points);
    s.norm_ = norm;
    s.p_ = p;
    for (int i = 0; i < s.size_; ++i) {
        for (int j = i + 1; j < s.size_; ++j) {
            if (s.dist(i, j) <= tolerance) {
                throw ValidationError("points " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
            }
        }
    }
    return s;
}

double MetricSpace::norm_dist(const std::vector<double>& a, const std::vector<double>& b) const {
    if (!embedded_) throw ValidationError("norm_dist requires an embedded space");
    if (a.size() != b.size()) throw ValidationError("norm_dist dimension mismatch");
    switch (norm_) {
        case Norm::L1: {
            double s = 0;
            for (std::size_t c = 0; c < a.size(); ++c) s += std::abs(a[c] - b[c]);
            return s;
        }
        case Norm::L2: {
            double s = 0;
            for (std::size_t c = 0; c < a.size(); ++c) {
                const double t = a[c] - b[c];
                s += t * t;
            }
            return std::sqrt(s);
        }
        case Norm::LInf: {
            double m = 0;
            for (std::size_t c = 0; c < a.size(); ++c) m = std::max(m, std::abs(a[c] - b[c]));
            return m;
        }
        case Norm::Lp: {
            double s = 0;
            for (std::size_t c = 0; c < a.size(); ++c) s += std::pow(std::abs(a[c] - b[c]), p_);
            return std::pow(s, 1.0 / p_);
        }
    }
    return 0.0;
}

double MetricSpace::dist(int i, int j) const {
    if (i < 0 || i >= size_ || j < 0 || j >= size_) {
        throw ValidationError("point index out of range: (" + std::to_string(i) + "," +
                              std::to_string(j) + ") in space of size " + std::to_string(size_));
    }
    if (!embedded_) return d_[i][j];
    if (i == j) return 0.0;
    return norm_dist(points_[i], points_[j]);
}

int MetricSpace::dim() const {
    if (!embedded_) throw ValidationError("dim requires an embedded space");
    return static_cast<int>(points_[0].size());
}

const std::vector<double>& MetricSpace::coords(int i) const {
    if (!embedded_) throw ValidationError("coords requires an embedded space");
    if (i < 0 || i >= size_) throw ValidationError("point index out of range");
    return points_[i];
}

PointSet::PointSet(std::vector<int> indices, int space_size) : indices_(std::move(indices)) {
    if (indices_.empty()) throw ValidationError("point set is empty");
    std::sort(indices_.begin(), indices_.end());
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (indices_[k] < 0 || indices_[k] >= space_size) {
            throw ValidationError("point set index out of range: " +
                                  std::to_string(indices_[k]));
        }
        if (k > 0 && indices_[k] == indices_[k - 1]) {
            throw ValidationError("point set has duplicate index: " +
                                  std::to_string(indices_[k]));
        }
    }
}

PointSet PointSet::all(int space_size) {
    std::vector<int> idx(static_cast<std::size_t>(space_size));
    for (int i = 0; i < space_size; ++i) idx[static_cast<std::size_t>(i)] = i;
    return PointSet(std::move(idx), space_size);
}

PointSet PointSet::single(int i, int space_size) { return PointSet({i}, space_size); }

bool PointSet::contains(int i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

double point_set_dist(const MetricSpace& space, int i, const PointSet& a) {
    double best = space.dist(i, a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) best = std::min(best, space.dist(i, a[k]));
    return best;
}

double hausdorff(const MetricSpace& space, const PointSet& a, const PointSet& b) {
    double forward = 0;
    for (int x : a) forward = std::max(forward, point_set_dist(space, x, b));
    double backward = 0;
    for (int y : b) backward = std::max(backward, point_set_dist(space, y, a));
    return std::max(forward, backward);
}

PointSet nearest_points(const MetricSpace& space, int i, const PointSet& a) {
    const double best = point_set_dist(space, i, a);
    std::vector<int> out;
    for (int x : a) {
        if (space.dist(i, x) <= best + space.tolerance()) out.push_back(x);
    }
    return PointSet(std::move(out), space.size());
}

int nearest_point(const MetricSpace& space, int i, const PointSet& a) {
    int best = a[0];
    double bestDist = space.dist(i, best);
    for (std::size_t k = 1; k < a.size(); ++k) {
        const double d = space.dist(i, a[k]);
        if (d < bestDist) {
            best = a[k];
            bestDist = d;
        }
    }
    return best;
}

PointSet metric_segment(const MetricSpace& space, int i, int j) {
    const double dij = space.dist(i, j);
    std::vector<int> out;
    for (int s = 0; s < space.size(); ++s) {
        if (space.dist(i, s) + space.dist(s, j) <= dij + space.tolerance()) out.push_back(s);
    }
    return PointSet(std::move(out), space.size());
}

ChebyshevResult chebyshev(const MetricSpace& space, const PointSet& a, const PointSet& pool) {
    std::vector<double> cover(pool.size());
    double radius = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pool.size(); ++k) {
        double worst = 0;
        for (int x : a) worst = std::max(worst, space.dist(pool[k], x));
        cover[k] = worst;
        radius = std::min(radius, worst);
    }
    std::vector<int> centers;
    for (std::size_t k = 0; k < pool.size(); ++k) {
        if (cover[k] <= radius + space.tolerance()) centers.push_back(pool[k]);
    }
    return {radius, PointSet(std::move(centers), space.size())};
}

}  // namespace setpoint

#include "setpoint/potential.hpp"

#include <algorithm>
#include <cmath>

namespace setpoint {

Potential::Potential(std::map<int, double> values, double lower_bound)
    : values_(std::move(values)), lower_bound_(lower_bound) {
    if (values_.empty()) throw ValidationError("potential has no values");
    for (const auto& [x, v] : values_) {
        if (v < lower_bound_) {
            throw ValidationError("potential value at " + std::to_string(x) +
                                  " is below the stated lower bound");
        }
    }
}

Potential Potential::from_gap(const MultiMap& map) {
    std::map<int, double> values;
    for (int x : map.domain()) values[x] = gap(map, x);
    return Potential(std::move(values), 0.0);
}

double Potential::at(int x) const {
    const auto it = values_.find(x);
    if (it == values_.end()) {
        throw ValidationError("potential has no value at point " + std::to_string(x));
    }
    return it->second;
}

ScaledMetric ScaledMetric::scaled(double c) {
    if (!(c > 0)) throw ValidationError("metric scale must be positive");
    ScaledMetric m;
    m.scale_ = c;
    return m;
}

ScaledMetric ScaledMetric::table(std::vector<std::vector<double>> t, double tolerance) {
    const MetricValidation report = validate_metric(t, tolerance);
    if (!report.valid()) {
        throw ValidationError("auxiliary metric table is invalid: " + report.summary());
    }
    ScaledMetric m;
    m.table_ = std::move(t);
    return m;
}

double ScaledMetric::dist(const MetricSpace& space, int i, int j) const {
    if (is_scaled()) return scale_ * space.dist(i, j);
    const int n = static_cast<int>(table_.size());
    if (i < 0 || i >= n || j < 0 || j >= n) {
        throw ValidationError("auxiliary metric table does not cover point pair (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

GraphMetric GraphMetric::max_form(double outer, double t_scale) {
    if (!(outer > 0) || !(t_scale > 0)) {
        throw ValidationError("graph metric parameters must be positive");
    }
    GraphMetric g;
    g.outer_ = outer;
    g.t_scale_ = t_scale;
    return g;
}

GraphMetric GraphMetric::table(std::vector<GraphPair> pairs, std::vector<std::vector<double>> m,
                               double tolerance) {
    if (pairs.size() != m.size()) {
        throw ValidationError("graph metric table size does not match pair list");
    }
    const MetricValidation report = validate_metric(m, tolerance);
    if (!report.valid()) {
        throw ValidationError("graph metric table is invalid: " + report.summary());
    }
    GraphMetric g;
    g.pairs_ = std::move(pairs);
    g.table_ = std::move(m);
    return g;
}

int GraphMetric::pair_position(const GraphPair& p) const {
    const auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it == pairs_.end() || !(*it == p)) {
        throw ValidationError("graph metric table does not cover pair (" + std::to_string(p.x) +
                              "," + std::to_string(p.t) + ")");
    }
    return static_cast<int>(it - pairs_.begin());
}

double GraphMetric::dist(const MetricSpace& space, const GraphPair& p,
                         const GraphPair& q) const {
    if (is_max_form()) {
        return outer_ * std::max(space.dist(p.x, q.x), space.dist(p.t, q.t) / t_scale_);
    }
    const int a = pair_position(p);
    const int b = pair_position(q);
    return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::vector<std::vector<double>> GraphMetric::to_table(const MultiMap& map) const {
    const std::vector<GraphPair> pairs = graph(map);
    const std::size_t n = pairs.size();
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            out[a][b] = dist(map.space(), pairs[a], pairs[b]);
        }
    }
    return out;
}

GraphMetric graph_metric_from_co18(double alpha, double eps) {
    if (!(alpha + eps < 1.0)) throw ValidationError("co18 graph metric requires alpha+eps < 1");
    return GraphMetric::max_form(1.0 - alpha - eps, alpha + eps);
}

}  // namespace setpoint

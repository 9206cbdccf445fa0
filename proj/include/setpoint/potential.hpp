#pragma once

#include <map>
#include <optional>
#include <vector>

#include "setpoint/multimap.hpp"

namespace setpoint {

// Bounded-below potential on a map domain.
class Potential {
public:
    Potential(std::map<int, double> values, double lower_bound);
    static Potential from_gap(const MultiMap& map);

    double at(int x) const;
    double lower_bound() const { return lower_bound_; }
    const std::map<int, double>& values() const { return values_; }

private:
    std::map<int, double> values_;
    double lower_bound_ = 0.0;
};

// Auxiliary metric delta on the universe: either a positive rescaling of the
// base metric or an explicit table validated against the metric axioms.
class ScaledMetric {
public:
    static ScaledMetric scaled(double c);
    static ScaledMetric table(std::vector<std::vector<double>> m,
                              double tolerance = kDefaultTolerance);

    double dist(const MetricSpace& space, int i, int j) const;
    bool is_scaled() const { return table_.empty(); }
    double scale() const { return scale_; }
    const std::vector<std::vector<double>>& table_values() const { return table_; }

private:
    ScaledMetric() = default;
    double scale_ = 1.0;
    std::vector<std::vector<double>> table_;
};

// Metric on graph pairs (x,t). The max form
//   outer * max(d(x,z), d(t,v) / t_scale)
// is a metric for any positive parameters; tables are validated.
class GraphMetric {
public:
    static GraphMetric max_form(double outer, double t_scale);
    static GraphMetric table(std::vector<GraphPair> pairs, std::vector<std::vector<double>> m,
                             double tolerance = kDefaultTolerance);

    double dist(const MetricSpace& space, const GraphPair& p, const GraphPair& q) const;
    bool is_max_form() const { return pairs_.empty(); }
    double outer() const { return outer_; }
    double t_scale() const { return t_scale_; }

    // Materializes the max form over graph(map) as an explicit table, for
    // axiom checks and serialization.
    std::vector<std::vector<double>> to_table(const MultiMap& map) const;

private:
    GraphMetric() = default;
    double outer_ = 1.0, t_scale_ = 1.0;
    std::vector<GraphPair> pairs_;
    std::vector<std::vector<double>> table_;
    int pair_position(const GraphPair& p) const;
};

// Graph metric induced by the co18 step construction: outer = 1-alpha-eps,
// t_scale = alpha+eps.
GraphMetric graph_metric_from_co18(double alpha, double eps);

}  // namespace setpoint

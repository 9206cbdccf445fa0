#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setpoint/conditions.hpp"
#include "setpoint/potential.hpp"

namespace setpoint {

struct DescentMove {
    int from = -1, to = -1;
    double potential_before = 0, potential_after = 0;
};

enum class DescentStatus { fixed_point, violation, max_iter };

std::string descent_status_name(DescentStatus s);

struct DescentVerdict {
    DescentStatus status = DescentStatus::fixed_point;
    int final_x = -1;
    std::vector<DescentMove> moves;
    int violation_at = -1;
    bool telescoping_ok = true;
};

// Greedy strict descent under co13: from a non-fixed x move to the admissible
// z minimizing the potential. Strict decrease of a bounded-below potential on
// a finite domain forces termination; a non-fixed point with no admissible
// move is a hypothesis-violation certificate. With moves_from_values the
// candidates are restricted to value points (the single-valued reading).
DescentVerdict caristi_descent(const MultiMap& map, const Potential& phi,
                               const ScaledMetric& delta, int x0, int max_iter = 0,
                               bool moves_from_values = false);

// caristi_descent with the gap function as potential; telescoping of the
// per-move inequality is rechecked over the whole path.
DescentVerdict gap_descent(const MultiMap& map, const ScaledMetric& delta, int x0,
                           int max_iter = 0);

struct Co15Build {
    ConditionReport report;  // co15
    double delta_scale = 0;  // 1 - alpha - eps
};

// Verifies per point that a co14 witness also satisfies co15 with coefficient
// 1-alpha-eps, given an alpha-contraction. Throws when co2 fails, naming the
// violating pair.
Co15Build build_co15_step(const MultiMap& map, double alpha, double eps,
                          const ConditionReport& co14);

struct GraphDescentMove {
    GraphPair from, to;
    double value_before = 0, value_after = 0;  // d(x,t)
};

struct GraphDescentVerdict {
    DescentStatus status = DescentStatus::fixed_point;
    GraphPair final_pair;
    std::vector<GraphDescentMove> moves;
    std::optional<GraphPair> violation_at;
};

// Descent on graph pairs under co16: both inequalities plus strict progress
// in d(x,t); the chooser minimizes d(z,v).
GraphDescentVerdict graph_descent_co16(const MultiMap& map, const ScaledMetric& delta, double k,
                                       GraphPair start, int max_iter = 0);

// Descent on graph pairs under co20 with a metric on the graph itself.
GraphDescentVerdict pair_descent_co20(const MultiMap& map, const GraphMetric& graph_delta,
                                      GraphPair start, int max_iter = 0);

struct Co18Build {
    ConditionReport report;  // co18
    double delta_scale = 0;  // 1 - alpha - eps
    double k_value = 0;      // alpha + eps
};

// From co17 witnesses constructs v in F(z) nearest to t, verifies the co19
// bound d(t,v) <= (alpha+eps-eps1) d(x,z) and then co18; the result
// parameterizes graph_descent_co16.
Co18Build build_co18_step(const MultiMap& map, double alpha, double eps, double eps1,
                          const ConditionReport& co17);

}  // namespace setpoint

#pragma once

#include <vector>

#include "setpoint/metric_space.hpp"

namespace setpoint {

struct GraphPair {
    int x = -1;
    int t = -1;
    bool operator==(const GraphPair& o) const { return x == o.x && t == o.t; }
    bool operator<(const GraphPair& o) const { return x < o.x || (x == o.x && t < o.t); }
};

// Set-valued mapping F on a finite universe: a nonempty value set per domain
// point, values allowed anywhere in the universe. Immutable after
// construction.
class MultiMap {
public:
    MultiMap(SpacePtr space, PointSet domain, std::vector<PointSet> values);

    const MetricSpace& space() const { return *space_; }
    SpacePtr space_ptr() const { return space_; }
    const PointSet& domain() const { return domain_; }

    bool in_domain(int x) const;
    const PointSet& value(int x) const;  // F(x); throws when x is outside the domain
    bool is_self_map() const;            // every value set inside the domain

private:
    SpacePtr space_;
    PointSet domain_;
    std::vector<PointSet> values_;  // aligned with domain_.indices()
    std::vector<int> position_;     // point index -> slot in values_, -1 outside
};

// d(F(x),x); zero exactly at fixed points.
double gap(const MultiMap& map, int x);

// Ground-truth membership scan: every x with x in F(x), ascending. May be
// empty, so this is a plain list rather than a PointSet.
std::vector<int> fixed_points(const MultiMap& map);

// Smallest alpha with D(F(x),F(y)) <= alpha * d(x,y) over the finite domain;
// zero for singleton domains.
double lipschitz_estimate(const MultiMap& map);

// All (x, t in F(x)) pairs ordered by x then t.
std::vector<GraphPair> graph(const MultiMap& map);

}  // namespace setpoint

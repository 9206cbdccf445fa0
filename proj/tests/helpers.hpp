#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "setpoint/multimap.hpp"

namespace setpoint::testing {

inline SpacePtr line_space(const std::vector<double>& xs, Norm norm = Norm::L2) {
    std::vector<std::vector<double>> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.push_back({x});
    return std::make_shared<const MetricSpace>(MetricSpace::from_points(pts, norm));
}

inline SpacePtr plane_space(const std::vector<std::vector<double>>& pts, Norm norm,
                            double p = 2.0) {
    return std::make_shared<const MetricSpace>(MetricSpace::from_points(pts, norm, p));
}

// Dyadic grid 1, 1/2, ..., 2^-20, 0. Index k holds 2^-k; index 21 holds 0.
inline SpacePtr dyad_space() {
    std::vector<double> xs;
    for (int k = 0; k <= 20; ++k) xs.push_back(std::ldexp(1.0, -k));
    xs.push_back(0.0);
    return line_space(xs);
}

// Halving map on the full dyadic grid; the bottom point falls to 0.
inline MultiMap dyad_full_map(SpacePtr space = nullptr) {
    if (!space) space = dyad_space();
    const int n = space->size();  // 22
    PointSet domain = PointSet::all(n);
    std::vector<PointSet> values;
    for (int k = 0; k <= 19; ++k) values.push_back(PointSet::single(k + 1, n));
    values.push_back(PointSet::single(21, n));  // F(2^-20) = {0}
    values.push_back(PointSet::single(21, n));  // F(0) = {0}
    return MultiMap(std::move(space), std::move(domain), std::move(values));
}

// Halving map whose bottom grid point is fixed: the variant every iteration
// engine can run to convergence, since a truncated halving chain otherwise
// breaks the gap-decay conditions at the last level.
inline MultiMap dyad_iter_map(SpacePtr space = nullptr) {
    if (!space) space = dyad_space();
    const int n = space->size();
    PointSet domain = PointSet::all(n);
    std::vector<PointSet> values;
    for (int k = 0; k <= 19; ++k) values.push_back(PointSet::single(k + 1, n));
    values.push_back(PointSet::single(20, n));  // F(2^-20) = {2^-20}
    values.push_back(PointSet::single(21, n));  // F(0) = {0}
    return MultiMap(std::move(space), std::move(domain), std::move(values));
}

// Halving map restricted to the points whose halves stay on the grid: the
// domain omits 2^-20 (index 20), so every pair ratio is exactly 1/2 and the
// value of 2^-19 leaves the domain.
inline MultiMap dyad_exact_map(SpacePtr space = nullptr) {
    if (!space) space = dyad_space();
    const int n = space->size();
    std::vector<int> dom;
    for (int k = 0; k <= 19; ++k) dom.push_back(k);
    dom.push_back(21);
    std::vector<PointSet> values;
    for (int k = 0; k <= 19; ++k) values.push_back(PointSet::single(k + 1, n));
    values.push_back(PointSet::single(21, n));  // F(0) = {0}
    return MultiMap(std::move(space), PointSet(std::move(dom), n), std::move(values));
}

// Quartering grid 1, 1/4, ..., 4^-J, 0 with the quarter-collapse self-map;
// a genuine 1/3-contraction with unique fixed point 0.
inline SpacePtr quad_space(int J = 8) {
    std::vector<double> xs;
    for (int k = 0; k <= J; ++k) xs.push_back(std::pow(0.25, k));
    xs.push_back(0.0);
    return line_space(xs);
}

inline MultiMap quad_map(int J = 8, SpacePtr space = nullptr) {
    if (!space) space = quad_space(J);
    const int n = space->size();  // J + 2
    PointSet domain = PointSet::all(n);
    std::vector<PointSet> values;
    for (int k = 0; k < J; ++k) values.push_back(PointSet::single(k + 1, n));
    values.push_back(PointSet::single(J + 1, n));  // F(4^-J) = {0}
    values.push_back(PointSet::single(J + 1, n));  // F(0) = {0}
    return MultiMap(std::move(space), std::move(domain), std::move(values));
}

inline MultiMap two_cycle_map() {
    SpacePtr space = line_space({0, 1});
    return MultiMap(space, PointSet::all(2),
                    {PointSet::single(1, 2), PointSet::single(0, 2)});
}

// Line {0,1,2} with F(0)={0}, F(1)={0}, F(2)={0,2}: satisfies co3 with
// alpha=1/2 but no co2 bound below 2.
inline MultiMap line3_mixed_map() {
    SpacePtr space = line_space({0, 1, 2});
    return MultiMap(space, PointSet::all(3),
                    {PointSet::single(0, 3), PointSet::single(0, 3), PointSet({0, 2}, 3)});
}

// Line {0,1,2} with F(0)={0}, F(1)={0}, F(2)={1}: co21 holds, min gap 0.
inline MultiMap line3_c21_map() {
    SpacePtr space = line_space({0, 1, 2});
    return MultiMap(space, PointSet::all(3),
                    {PointSet::single(0, 3), PointSet::single(0, 3), PointSet::single(1, 3)});
}

// All nonempty subsets of {0..n-1} with at most max_card elements, ascending.
inline std::vector<std::vector<int>> small_subsets(int n, int max_card) {
    std::vector<std::vector<int>> out;
    const int total = 1 << n;
    for (int mask = 1; mask < total; ++mask) {
        std::vector<int> s;
        for (int b = 0; b < n; ++b) {
            if ((mask >> b) & 1) s.push_back(b);
        }
        if (static_cast<int>(s.size()) <= max_card) out.push_back(std::move(s));
    }
    return out;
}

// Every total assignment of value sets (cardinality <= max_card) over the
// full domain of the space.
inline void for_each_multimap(const SpacePtr& space, int max_card,
                              const std::function<void(const MultiMap&)>& fn) {
    const int n = space->size();
    const auto subsets = small_subsets(n, max_card);
    const std::size_t base = subsets.size();
    std::vector<std::size_t> odo(static_cast<std::size_t>(n), 0);
    for (;;) {
        std::vector<PointSet> values;
        values.reserve(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            values.emplace_back(subsets[odo[static_cast<std::size_t>(x)]], n);
        }
        fn(MultiMap(space, PointSet::all(n), std::move(values)));
        int pos = 0;
        while (pos < n) {
            if (++odo[static_cast<std::size_t>(pos)] < base) break;
            odo[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
}

// Reference implementations used to freeze expected values in tests.
inline double oracle_set_dist(const MetricSpace& space, int i, const std::vector<int>& a) {
    double best = space.dist(i, a.front());
    for (int x : a) best = std::min(best, space.dist(i, x));
    return best;
}

inline double oracle_hausdorff(const MetricSpace& space, const std::vector<int>& a,
                               const std::vector<int>& b) {
    double h = 0;
    for (int x : a) h = std::max(h, oracle_set_dist(space, x, b));
    for (int y : b) h = std::max(h, oracle_set_dist(space, y, a));
    return h;
}

}  // namespace setpoint::testing

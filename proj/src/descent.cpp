#include "setpoint/descent.hpp"

#include <algorithm>
#include <cmath>

namespace setpoint {

std::string descent_status_name(DescentStatus s) {
    switch (s) {
        case DescentStatus::fixed_point: return "fixed_point";
        case DescentStatus::violation: return "violation";
        case DescentStatus::max_iter: return "max_iter";
    }
    return "fixed_point";
}

DescentVerdict caristi_descent(const MultiMap& map, const Potential& phi,
                               const ScaledMetric& delta, int x0, int max_iter,
                               bool moves_from_values) {
    if (!map.in_domain(x0)) {
        throw ValidationError("start point " + std::to_string(x0) + " is outside the domain");
    }
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    if (max_iter <= 0) max_iter = static_cast<int>(map.domain().size()) + 1;

    DescentVerdict verdict;
    int x = x0;
    for (int n = 0; n < max_iter; ++n) {
        if (map.value(x).contains(x)) {
            verdict.status = DescentStatus::fixed_point;
            verdict.final_x = x;
            return verdict;
        }
        int best = -1;
        double best_phi = 0;
        auto consider = [&](int z) {
            if (z == x || !map.in_domain(z)) return;
            const double pz = phi.at(z);
            if (delta.dist(space, x, z) > phi.at(x) - pz + tol) return;
            if (pz >= phi.at(x) - tol) return;  // strict progress under rounding
            if (best < 0 || pz < best_phi) {
                best = z;
                best_phi = pz;
            }
        };
        if (moves_from_values) {
            for (int z : map.value(x)) consider(z);
        } else {
            for (int z : map.domain()) consider(z);
        }
        if (best < 0) {
            verdict.status = DescentStatus::violation;
            verdict.final_x = x;
            verdict.violation_at = x;
            return verdict;
        }
        verdict.moves.push_back({x, best, phi.at(x), best_phi});
        x = best;
    }
    verdict.status = DescentStatus::max_iter;
    verdict.final_x = x;
    return verdict;
}

DescentVerdict gap_descent(const MultiMap& map, const ScaledMetric& delta, int x0,
                           int max_iter) {
    const Potential phi = Potential::from_gap(map);
    DescentVerdict verdict = caristi_descent(map, phi, delta, x0, max_iter);
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    for (const auto& move : verdict.moves) {
        if (delta.dist(space, move.from, move.to) >
            move.potential_before - move.potential_after + tol) {
            verdict.telescoping_ok = false;
        }
    }
    return verdict;
}

Co15Build build_co15_step(const MultiMap& map, double alpha, double eps,
                          const ConditionReport& co14) {
    if (!(alpha >= 0) || !(eps >= 0) || !(alpha + eps < 1.0)) {
        throw ValidationError("co15 step requires alpha, eps >= 0 and alpha + eps < 1");
    }
    const ConditionParams co2_params{alpha, 0, 0, 1, 0, 0};
    const ConditionReport co2 = check_condition(map, ConditionId::co2, co2_params);
    if (!co2.holds) {
        const auto& f = *co2.falsifier;
        throw ValidationError("co15 step requires an alpha-contraction; co2 fails at pair (" +
                              std::to_string(f.x) + "," + std::to_string(f.y) + ")");
    }

    Co15Build build;
    build.delta_scale = 1.0 - alpha - eps;
    build.report.id = ConditionId::co15;
    build.report.holds = true;
    build.report.vacuous = true;

    if (!co14.holds) {
        build.report.holds = false;
        build.report.vacuous = false;
        build.report.falsifier = co14.falsifier;
        build.report.note = "co14 does not hold; co15 not asserted at the falsifying point";
        return build;
    }

    const MetricSpace& space = map.space();
    const double slack = 4.0 * space.tolerance();
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        build.report.vacuous = false;
        const auto it = std::find_if(co14.witnesses.begin(), co14.witnesses.end(),
                                     [&](const ConditionWitness& w) { return w.x == x; });
        if (it == co14.witnesses.end()) {
            build.report.holds = false;
            build.report.witnesses.clear();
            build.report.falsifier = ConditionWitness{x, -1, -1, -1};
            build.report.note = "co14 witness table has no entry at this point";
            return build;
        }
        const int z = it->z;
        if (build.delta_scale * space.dist(x, z) > gap(map, x) - gap(map, z) + slack) {
            build.report.holds = false;
            build.report.witnesses.clear();
            build.report.falsifier = ConditionWitness{x, -1, z, -1};
            build.report.note = "co14 witness fails the co15 inequality";
            return build;
        }
        build.report.witnesses.push_back({x, -1, z, -1});
    }
    return build;
}

namespace {

GraphPair validate_start(const MultiMap& map, GraphPair start) {
    if (!map.in_domain(start.x) || !map.value(start.x).contains(start.t)) {
        throw ValidationError("start pair (" + std::to_string(start.x) + "," +
                              std::to_string(start.t) + ") is not in graph(F)");
    }
    return start;
}

// Shared driver for the two graph descents: `admissible` checks the metric
// inequality set for a candidate move.
template <typename Admissible>
GraphDescentVerdict run_graph_descent(const MultiMap& map, GraphPair start, int max_iter,
                                      Admissible&& admissible) {
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    if (max_iter <= 0) max_iter = static_cast<int>(graph(map).size()) + 1;

    GraphDescentVerdict verdict;
    GraphPair cur = validate_start(map, start);
    for (int n = 0; n < max_iter; ++n) {
        if (map.value(cur.x).contains(cur.x)) {
            verdict.status = DescentStatus::fixed_point;
            verdict.final_pair = cur;
            return verdict;
        }
        const double dxt = space.dist(cur.x, cur.t);
        GraphPair best{-1, -1};
        double best_val = 0;
        for (int z : map.domain()) {
            if (z == cur.x) continue;
            for (int v : map.value(z)) {
                if (!map.in_domain(z)) continue;
                const double dzv = space.dist(z, v);
                if (dzv >= dxt - tol) continue;  // strict progress
                if (!admissible(cur, GraphPair{z, v}, dxt, dzv)) continue;
                if (best.x < 0 || dzv < best_val ||
                    (dzv == best_val && GraphPair{z, v} < best)) {
                    best = {z, v};
                    best_val = dzv;
                }
            }
        }
        if (best.x < 0) {
            verdict.status = DescentStatus::violation;
            verdict.final_pair = cur;
            verdict.violation_at = cur;
            return verdict;
        }
        verdict.moves.push_back({cur, best, dxt, best_val});
        cur = best;
    }
    verdict.status = DescentStatus::max_iter;
    verdict.final_pair = cur;
    return verdict;
}

}  // namespace

GraphDescentVerdict graph_descent_co16(const MultiMap& map, const ScaledMetric& delta, double k,
                                       GraphPair start, int max_iter) {
    if (!(k > 0)) throw ValidationError("co16 descent requires k > 0");
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    return run_graph_descent(
        map, start, max_iter,
        [&](const GraphPair& p, const GraphPair& q, double dxt, double dzv) {
            const double drop = dxt - dzv;
            return delta.dist(space, p.x, q.x) <= drop + tol &&
                   delta.dist(space, p.t, q.t) <= k * drop + tol;
        });
}

GraphDescentVerdict pair_descent_co20(const MultiMap& map, const GraphMetric& graph_delta,
                                      GraphPair start, int max_iter) {
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    return run_graph_descent(map, start, max_iter,
                             [&](const GraphPair& p, const GraphPair& q, double dxt,
                                 double dzv) {
                                 return graph_delta.dist(space, p, q) <= dxt - dzv + tol;
                             });
}

Co18Build build_co18_step(const MultiMap& map, double alpha, double eps, double eps1,
                          const ConditionReport& co17) {
    if (!(alpha >= 0) || !(eps > 0) || !(alpha + eps < 1.0)) {
        throw ValidationError("co18 step requires alpha >= 0, eps > 0, alpha + eps < 1");
    }
    if (!(eps1 > 0) || !(eps1 < eps)) {
        throw ValidationError("co18 step requires 0 < eps1 < eps");
    }
    const ConditionParams co2_params{alpha, 0, 0, 1, 0, 0};
    const ConditionReport co2 = check_condition(map, ConditionId::co2, co2_params);
    if (!co2.holds) {
        const auto& f = *co2.falsifier;
        throw ValidationError("co18 step requires an alpha-contraction; co2 fails at pair (" +
                              std::to_string(f.x) + "," + std::to_string(f.y) + ")");
    }

    Co18Build build;
    build.delta_scale = 1.0 - alpha - eps;
    build.k_value = alpha + eps;
    build.report.id = ConditionId::co18;
    build.report.holds = true;
    build.report.vacuous = true;

    if (!co17.holds) {
        build.report.holds = false;
        build.report.vacuous = false;
        build.report.falsifier = co17.falsifier;
        build.report.note = "co17 does not hold; co18 not asserted at the falsifying pair";
        return build;
    }

    const MetricSpace& space = map.space();
    const double slack = 4.0 * space.tolerance();
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        build.report.vacuous = false;
        for (int t : map.value(x)) {
            const auto it = std::find_if(
                co17.witnesses.begin(), co17.witnesses.end(),
                [&](const ConditionWitness& w) { return w.x == x && w.y == t; });
            if (it == co17.witnesses.end()) {
                build.report.holds = false;
                build.report.witnesses.clear();
                build.report.falsifier = ConditionWitness{x, t, -1, -1};
                build.report.note = "co17 witness table has no entry at this pair";
                return build;
            }
            const int z = it->z;
            if (!map.in_domain(z)) {
                build.report.holds = false;
                build.report.witnesses.clear();
                build.report.falsifier = ConditionWitness{x, t, z, -1};
                build.report.note = "co17 witness lies outside the domain";
                return build;
            }
            const int v = nearest_point(space, t, map.value(z));
            const double dxz = space.dist(x, z);
            if (space.dist(t, v) > (alpha + eps - eps1) * dxz + slack) {
                build.report.holds = false;
                build.report.witnesses.clear();
                build.report.falsifier = ConditionWitness{x, t, z, v};
                build.report.note =
                    "co19 unrealizable at this pair; the discretization broke the "
                    "contraction's value selection";
                return build;
            }
            const double lhs =
                build.delta_scale * std::max(dxz, space.dist(t, v) / build.k_value);
            if (lhs > space.dist(x, t) - space.dist(z, v) + slack) {
                build.report.holds = false;
                build.report.witnesses.clear();
                build.report.falsifier = ConditionWitness{x, t, z, v};
                build.report.note = "constructed pair fails the co18 inequality";
                return build;
            }
            build.report.witnesses.push_back({x, t, z, v});
        }
    }
    return build;
}

}  // namespace setpoint

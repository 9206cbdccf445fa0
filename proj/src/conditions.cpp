#include "setpoint/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "setpoint/trace.hpp"

namespace setpoint {

std::string condition_name(ConditionId id) {
    return "co" + std::to_string(static_cast<int>(id));
}

ConditionId parse_condition(const std::string& name) {
    if (name.size() > 2 && name.rfind("co", 0) == 0) {
        const int n = std::atoi(name.c_str() + 2);
        if (n >= 1 && n <= 21) return static_cast<ConditionId>(n);
    }
    throw ValidationError("unknown condition id: " + name);
}

namespace {

void require_self_map(const MultiMap& map, ConditionId id) {
    if (!map.is_self_map()) {
        throw ValidationError(condition_name(id) +
                              " requires every value inside the map domain");
    }
}

void require_range(bool ok, ConditionId id, const std::string& what) {
    if (!ok) {
        throw ValidationError("invalid parameters for " + condition_name(id) + ": " + what);
    }
}

int single_value(const MultiMap& map, int x, ConditionId id) {
    const PointSet& v = map.value(x);
    if (v.size() != 1) {
        throw ValidationError(condition_name(id) + " requires a single-valued map, but F(" +
                              std::to_string(x) + ") has " + std::to_string(v.size()) +
                              " elements");
    }
    return v[0];
}

ConditionReport pair_lipschitz_check(const MultiMap& map, ConditionId id, double alpha,
                                     bool single_valued) {
    require_range(alpha >= 0, id, "alpha must be nonnegative");
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    const PointSet& dom = map.domain();
    ConditionReport report{id, true, {}, std::nullopt, false, false, ""};
    for (std::size_t a = 0; a < dom.size() && report.holds; ++a) {
        for (std::size_t b = a + 1; b < dom.size(); ++b) {
            const int x = dom[a], y = dom[b];
            double lhs;
            if (single_valued) {
                lhs = space.dist(single_value(map, x, id), single_value(map, y, id));
            } else {
                lhs = hausdorff(space, map.value(x), map.value(y));
            }
            if (lhs > alpha * space.dist(x, y) + tol) {
                report.holds = false;
                report.falsifier = ConditionWitness{x, y, -1, -1};
                break;
            }
        }
    }
    return report;
}

ConditionReport check_co3(const MultiMap& map, const ConditionParams& p) {
    require_range(p.alpha >= 0 && p.epsilon >= 0 && p.alpha + p.epsilon < 1.0, ConditionId::co3,
                  "requires alpha >= 0, epsilon >= 0, alpha + epsilon < 1");
    require_self_map(map, ConditionId::co3);
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionReport report{ConditionId::co3, true, {}, std::nullopt, p.alpha == 0.0, false, ""};
    if (p.alpha == 0.0) {
        report.note = "alpha=0 convention: a value point with vanishing gap is required";
    }
    for (int x : map.domain()) {
        const double gx = gap(map, x);
        bool found = false;
        for (int y : map.value(x)) {
            const double gy = gap(map, y);
            bool ok;
            if (p.alpha == 0.0) {
                // alpha = 0 collapses the chain to d(F(y),y) = 0
                ok = gy <= tol;
            } else {
                const double mid = p.alpha * space.dist(y, x);
                ok = gy <= mid + tol && mid <= (p.alpha + p.epsilon) * gx + tol;
            }
            if (ok) {
                report.witnesses.push_back({x, y, -1, -1});
                found = true;
                break;
            }
        }
        if (!found) {
            report.holds = false;
            report.witnesses.clear();
            report.falsifier = ConditionWitness{x, -1, -1, -1};
            break;
        }
    }
    return report;
}

ConditionReport check_co4(const MultiMap& map, const ConditionParams& p) {
    require_range(p.alpha >= 0, ConditionId::co4, "alpha must be nonnegative");
    require_self_map(map, ConditionId::co4);
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionReport report{ConditionId::co4, true, {}, std::nullopt, false, false, ""};
    for (int x : map.domain()) {
        for (int y : map.value(x)) {
            const double bound = p.alpha * space.dist(y, x) + tol;
            bool found = false;
            for (int z : map.value(y)) {
                if (space.dist(z, y) <= bound) {
                    report.witnesses.push_back({x, y, z, -1});
                    found = true;
                    break;
                }
            }
            if (!found) {
                report.holds = false;
                report.witnesses.clear();
                report.falsifier = ConditionWitness{x, y, -1, -1};
                return report;
            }
        }
    }
    return report;
}

ConditionReport check_co5(const MultiMap& map, const ConditionParams& p) {
    require_range(p.alpha >= 0 && p.alpha < 1.0, ConditionId::co5, "requires 0 <= alpha < 1");
    require_self_map(map, ConditionId::co5);
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionReport report{ConditionId::co5, true, {}, std::nullopt, false, false, ""};
    for (int x : map.domain()) {
        const double gx = gap(map, x);
        bool found = false;
        for (int y : map.value(x)) {
            if (std::abs(space.dist(y, x) - gx) <= tol && gap(map, y) <= p.alpha * gx + tol) {
                report.witnesses.push_back({x, y, -1, -1});
                found = true;
                break;
            }
        }
        if (!found) {
            report.holds = false;
            report.witnesses.clear();
            report.falsifier = ConditionWitness{x, -1, -1, -1};
            break;
        }
    }
    return report;
}

ConditionReport check_co7(const MultiMap& map, const ConditionParams& p) {
    require_range(p.alpha >= 0 && p.alpha < 1.0, ConditionId::co7, "requires 0 <= alpha < 1");
    require_self_map(map, ConditionId::co7);
    const double tol = map.space().tolerance();
    ConditionReport report{ConditionId::co7, true, {}, std::nullopt, false, false, ""};
    for (int x : map.domain()) {
        const double bound = p.alpha * gap(map, x) + tol;
        bool found = false;
        for (int y : map.value(x)) {
            if (gap(map, y) <= bound) {
                report.witnesses.push_back({x, y, -1, -1});
                found = true;
                break;
            }
        }
        if (!found) {
            report.holds = false;
            report.witnesses.clear();
            report.falsifier = ConditionWitness{x, -1, -1, -1};
            break;
        }
    }
    return report;
}

void require_sequence_inputs(const MultiMap& map, const ConditionInputs& in, ConditionId id) {
    if (in.sequence.empty()) {
        throw ValidationError(condition_name(id) + " requires a sequence");
    }
    if (!map.in_domain(in.center)) {
        throw ValidationError(condition_name(id) + " requires a center point in the domain");
    }
    for (int x : in.sequence) {
        if (!map.in_domain(x)) {
            throw ValidationError(condition_name(id) + " sequence point " + std::to_string(x) +
                                  " is outside the domain");
        }
    }
}

ConditionReport check_co11(const MultiMap& map, const ConditionInputs& in) {
    require_sequence_inputs(map, in, ConditionId::co11);
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    std::vector<int> chosen = in.chosen;
    if (chosen.empty()) {
        for (int x : in.sequence) chosen.push_back(nearest_point(space, x, map.value(x)));
    }
    if (chosen.size() != in.sequence.size()) {
        throw ValidationError("co11 chosen sequence length mismatch");
    }
    const PointSet& fc = map.value(in.center);
    ConditionReport report{ConditionId::co11, true, {}, std::nullopt, false, false, ""};
    for (std::size_t n = 0; n < in.sequence.size(); ++n) {
        const int xn = in.sequence[n], yn = chosen[n];
        if (!map.value(xn).contains(yn)) {
            throw ValidationError("co11 chosen point " + std::to_string(yn) +
                                  " is not a value of " + std::to_string(xn));
        }
        if (point_set_dist(space, yn, fc) > space.dist(in.center, xn) + tol) {
            report.holds = false;
            report.falsifier = ConditionWitness{xn, yn, -1, -1};
            return report;
        }
        report.witnesses.push_back({xn, yn, -1, -1});
    }
    return report;
}

ConditionReport check_co12(const MultiMap& map, const ConditionInputs& in) {
    require_sequence_inputs(map, in, ConditionId::co12);
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    const PointSet& fc = map.value(in.center);
    ConditionReport report{ConditionId::co12, true, {}, std::nullopt, false, false, ""};
    for (int xn : in.sequence) {
        const double radius = space.dist(in.center, xn);
        for (int t : map.value(xn)) {
            if (point_set_dist(space, t, fc) > radius + tol) {
                report.holds = false;
                report.falsifier = ConditionWitness{xn, t, -1, -1};
                return report;
            }
        }
        report.witnesses.push_back({xn, -1, -1, -1});
    }
    return report;
}

ConditionReport check_co13(const MultiMap& map, const ConditionInputs& in) {
    if (!in.phi || !in.delta) {
        throw ValidationError("co13 requires a potential and an auxiliary metric");
    }
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionReport report{ConditionId::co13, true, {}, std::nullopt, false, true, ""};
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        report.vacuous = false;
        bool found = false;
        for (int z : map.domain()) {
            if (z == x) continue;
            if (in.delta->dist(space, x, z) <= in.phi->at(x) - in.phi->at(z) + tol) {
                report.witnesses.push_back({x, -1, z, -1});
                found = true;
                break;
            }
        }
        if (!found) {
            report.holds = false;
            report.witnesses.clear();
            report.falsifier = ConditionWitness{x, -1, -1, -1};
            return report;
        }
    }
    if (report.vacuous) report.note = "no non-fixed points";
    return report;
}

ConditionReport check_co14(const MultiMap& map, const ConditionParams& p) {
    require_range(p.epsilon >= 0 && p.epsilon < 1.0, ConditionId::co14,
                  "requires 0 <= epsilon < 1");
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionReport report{ConditionId::co14, true, {}, std::nullopt, false, true, ""};
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        report.vacuous = false;
        const double gx = gap(map, x);
        bool found = false;
        for (int z : map.domain()) {
            if (z == x) continue;
            const double lhs = (1.0 - p.epsilon) * space.dist(x, z);
            if (lhs <= gx - point_set_dist(space, z, map.value(x)) + tol) {
                report.witnesses.push_back({x, -1, z, -1});
                found = true;
                break;
            }
        }
        if (!found) {
            report.holds = false;
            report.witnesses.clear();
            report.falsifier = ConditionWitness{x, -1, -1, -1};
            return report;
        }
    }
    if (report.vacuous) report.note = "no non-fixed points";
    return report;
}

ConditionReport check_co15(const MultiMap& map, const ConditionParams& p) {
    require_range(p.alpha >= 0 && p.epsilon >= 0 && p.alpha + p.epsilon < 1.0, ConditionId::co15,
                  "requires alpha, epsilon >= 0 and alpha + epsilon < 1");
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    const double coeff = 1.0 - p.alpha - p.epsilon;
    ConditionReport report{ConditionId::co15, true, {}, std::nullopt, false, true, ""};
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        report.vacuous = false;
        const double gx = gap(map, x);
        bool found = false;
        for (int z : map.domain()) {
            if (z == x) continue;
            if (coeff * space.dist(x, z) <= gx - gap(map, z) + tol) {
                report.witnesses.push_back({x, -1, z, -1});
                found = true;
                break;
            }
        }
        if (!found) {
            report.holds = false;
            report.witnesses.clear();
            report.falsifier = ConditionWitness{x, -1, -1, -1};
            return report;
        }
    }
    if (report.vacuous) report.note = "no non-fixed points";
    return report;
}

ConditionReport check_co16(const MultiMap& map, const ConditionParams& p,
                           const ConditionInputs& in) {
    require_range(p.k > 0, ConditionId::co16, "requires k > 0");
    if (!in.delta) throw ValidationError("co16 requires an auxiliary metric");
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionReport report{ConditionId::co16, true, {}, std::nullopt, false, true, ""};
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        report.vacuous = false;
        for (int t : map.value(x)) {
            const double dxt = space.dist(x, t);
            bool found = false;
            for (int z : map.domain()) {
                if (z == x) continue;
                const double dxz = in.delta->dist(space, x, z);
                for (int v : map.value(z)) {
                    const double drop = dxt - space.dist(z, v);
                    if (dxz <= drop + tol &&
                        in.delta->dist(space, t, v) <= p.k * drop + tol) {
                        report.witnesses.push_back({x, t, z, v});
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (!found) {
                report.holds = false;
                report.witnesses.clear();
                report.falsifier = ConditionWitness{x, t, -1, -1};
                return report;
            }
        }
    }
    if (report.vacuous) report.note = "no non-fixed points";
    return report;
}

ConditionReport check_co17(const MultiMap& map, const ConditionParams& p) {
    require_range(p.epsilon1 > 0 && p.epsilon1 < p.epsilon, ConditionId::co17,
                  "requires 0 < epsilon1 < epsilon");
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionReport report{ConditionId::co17, true, {}, std::nullopt, false, true, ""};
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        report.vacuous = false;
        for (int t : map.value(x)) {
            const double dxt = space.dist(x, t);
            bool found = false;
            for (int z : map.domain()) {
                if (z == x) continue;
                if ((1.0 - p.epsilon1) * space.dist(x, z) <= dxt - space.dist(z, t) + tol) {
                    report.witnesses.push_back({x, t, z, -1});
                    found = true;
                    break;
                }
            }
            if (!found) {
                report.holds = false;
                report.witnesses.clear();
                report.falsifier = ConditionWitness{x, t, -1, -1};
                return report;
            }
        }
    }
    if (report.vacuous) report.note = "no non-fixed points";
    return report;
}

ConditionReport check_co18(const MultiMap& map, const ConditionParams& p) {
    require_range(p.alpha >= 0 && p.epsilon > 0 && p.alpha + p.epsilon < 1.0, ConditionId::co18,
                  "requires alpha >= 0, epsilon > 0, alpha + epsilon < 1");
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    const double coeff = 1.0 - p.alpha - p.epsilon;
    const double ae = p.alpha + p.epsilon;
    ConditionReport report{ConditionId::co18, true, {}, std::nullopt, false, true, ""};
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        report.vacuous = false;
        for (int t : map.value(x)) {
            const double dxt = space.dist(x, t);
            bool found = false;
            for (int z : map.domain()) {
                if (z == x) continue;
                const double dxz = space.dist(x, z);
                for (int v : map.value(z)) {
                    const double lhs = coeff * std::max(dxz, space.dist(t, v) / ae);
                    if (lhs <= dxt - space.dist(z, v) + tol) {
                        report.witnesses.push_back({x, t, z, v});
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (!found) {
                report.holds = false;
                report.witnesses.clear();
                report.falsifier = ConditionWitness{x, t, -1, -1};
                return report;
            }
        }
    }
    if (report.vacuous) report.note = "no non-fixed points";
    return report;
}

ConditionReport check_co20(const MultiMap& map, const ConditionInputs& in) {
    if (!in.graph_delta) throw ValidationError("co20 requires a graph metric");
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionReport report{ConditionId::co20, true, {}, std::nullopt, false, true, ""};
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        report.vacuous = false;
        for (int t : map.value(x)) {
            const double dxt = space.dist(x, t);
            bool found = false;
            for (int z : map.domain()) {
                if (z == x) continue;
                for (int v : map.value(z)) {
                    const double lhs = in.graph_delta->dist(space, {x, t}, {z, v});
                    if (lhs <= dxt - space.dist(z, v) + tol) {
                        report.witnesses.push_back({x, t, z, v});
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (!found) {
                report.holds = false;
                report.witnesses.clear();
                report.falsifier = ConditionWitness{x, t, -1, -1};
                return report;
            }
        }
    }
    if (report.vacuous) report.note = "no non-fixed points";
    return report;
}

ConditionReport check_co21(const MultiMap& map) {
    const double tol = map.space().tolerance();
    ConditionReport report{ConditionId::co21, true, {}, std::nullopt, false, true, ""};
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) continue;
        report.vacuous = false;
        const double gx = gap(map, x);
        bool found = false;
        for (int z : map.domain()) {
            if (gap(map, z) < gx - tol) {
                report.witnesses.push_back({x, -1, z, -1});
                found = true;
                break;
            }
        }
        if (!found) {
            report.holds = false;
            report.witnesses.clear();
            report.falsifier = ConditionWitness{x, -1, -1, -1};
            return report;
        }
    }
    if (report.vacuous) report.note = "no non-fixed points";
    return report;
}

}  // namespace

ConditionReport check_condition(const MultiMap& map, ConditionId id,
                                const ConditionParams& params, const ConditionInputs& inputs) {
    switch (id) {
        case ConditionId::co1: return pair_lipschitz_check(map, id, params.alpha, true);
        case ConditionId::co2: return pair_lipschitz_check(map, id, params.alpha, false);
        case ConditionId::co3: return check_co3(map, params);
        case ConditionId::co4: return check_co4(map, params);
        case ConditionId::co5: return check_co5(map, params);
        case ConditionId::co7: return check_co7(map, params);
        case ConditionId::co11: return check_co11(map, inputs);
        case ConditionId::co12: return check_co12(map, inputs);
        case ConditionId::co13: return check_co13(map, inputs);
        case ConditionId::co14: return check_co14(map, params);
        case ConditionId::co15: return check_co15(map, params);
        case ConditionId::co16: return check_co16(map, params, inputs);
        case ConditionId::co17: return check_co17(map, params);
        case ConditionId::co18: return check_co18(map, params);
        case ConditionId::co20: return check_co20(map, inputs);
        case ConditionId::co21: return check_co21(map);
        default:
            throw ValidationError(condition_name(id) +
                                  " is not a standalone pointwise check");
    }
}

ConditionReport check_co6_trace(const MultiMap& map, const IterationTrace& trace) {
    if (trace.points.empty()) throw ValidationError("co6 requires a nonempty trace");
    for (int x : trace.points) {
        if (!map.in_domain(x)) {
            throw ValidationError("co6 trace point " + std::to_string(x) +
                                  " is outside the domain");
        }
    }
    const double tol = map.space().tolerance();
    ConditionReport report{ConditionId::co6, true, {}, std::nullopt, false, false, ""};
    const bool gaps_vanish = trace.gaps.back() <= tol;
    if (!gaps_vanish) {
        report.vacuous = true;
        report.note = "gap values do not vanish along the trace";
        return report;
    }
    const int limit = trace.last_point();
    if (gap(map, limit) <= tol) {
        report.witnesses.push_back({limit, -1, -1, -1});
    } else {
        report.holds = false;
        report.falsifier = ConditionWitness{limit, -1, -1, -1};
    }
    return report;
}

}  // namespace setpoint

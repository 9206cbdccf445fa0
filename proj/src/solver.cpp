#include "setpoint/solver.hpp"

#include <algorithm>
#include <cmath>

namespace setpoint {

std::string trace_status_name(TraceStatus s) {
    switch (s) {
        case TraceStatus::converged: return "converged";
        case TraceStatus::max_iter: return "max_iter";
        case TraceStatus::selection_failed: return "selection_failed";
    }
    return "converged";
}

namespace {

int default_max_iter(double tolerance, double ratio) {
    if (!(ratio > 0) || ratio >= 1.0) return 100000;
    const double n = 10.0 * std::ceil(std::log(tolerance) / std::log(ratio));
    return static_cast<int>(std::min(n, 100000.0));
}

// Shared driver: `select` returns the chosen y in F(x) or -1 when no value
// point is admissible at x.
template <typename Select>
IterationTrace run_iteration(const MultiMap& map, int x0, ConditionParams params, int max_iter,
                             double ratio, Select&& select) {
    if (!map.in_domain(x0)) {
        throw ValidationError("start point " + std::to_string(x0) + " is outside the domain");
    }
    const double tol = map.space().tolerance();
    if (max_iter <= 0) max_iter = default_max_iter(tol, ratio);

    IterationTrace trace;
    trace.params = params;
    trace.points.push_back(x0);
    trace.gaps.push_back(gap(map, x0));
    trace.status = TraceStatus::max_iter;
    for (int n = 0; n < max_iter; ++n) {
        const int x = trace.points.back();
        if (trace.gaps.back() <= tol) {
            trace.status = TraceStatus::converged;
            break;
        }
        const int y = select(x);
        if (y < 0) {
            trace.status = TraceStatus::selection_failed;
            trace.failed_at = x;
            break;
        }
        trace.chosen.push_back(y);
        trace.steps.push_back(map.space().dist(x, y));
        trace.points.push_back(y);
        trace.gaps.push_back(gap(map, y));
        if (trace.steps.back() <= tol) {
            trace.status = TraceStatus::converged;
            break;
        }
    }
    if (trace.gaps.back() <= tol) trace.status = TraceStatus::converged;
    return trace;
}

}  // namespace

IterationTrace iterate_co3(const MultiMap& map, int x0, double alpha, double eps,
                           int max_iter) {
    if (!(alpha > 0) || !(eps >= 0) || !(alpha + eps < 1.0)) {
        throw ValidationError("co3 iteration requires alpha > 0, eps >= 0, alpha + eps < 1");
    }
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionParams params;
    params.alpha = alpha;
    params.epsilon = eps;
    auto select = [&](int x) -> int {
        const double budget = (alpha + eps) * gap(map, x) + tol;
        int best = -1;
        double best_gap = 0;
        for (int y : map.value(x)) {
            if (!map.in_domain(y)) continue;
            if (alpha * space.dist(y, x) > budget) continue;
            const double gy = gap(map, y);
            if (gy > alpha * space.dist(y, x) + tol) continue;
            if (best < 0 || gy < best_gap) {
                best = y;
                best_gap = gy;
            }
        }
        return best;
    };
    return run_iteration(map, x0, params, max_iter, alpha + eps, select);
}

IterationTrace iterate_nearest(const MultiMap& map, int x0, double alpha, int max_iter) {
    if (!(alpha >= 0) || !(alpha < 1.0)) {
        throw ValidationError("nearest-point iteration requires 0 <= alpha < 1");
    }
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    ConditionParams params;
    params.alpha = alpha;
    auto select = [&](int x) -> int {
        const double bound = alpha * gap(map, x) + tol;
        int best = -1;
        double best_gap = 0;
        for (int y : nearest_points(space, x, map.value(x))) {
            if (!map.in_domain(y)) continue;
            const double gy = gap(map, y);
            if (gy > bound) continue;
            if (best < 0 || gy < best_gap) {
                best = y;
                best_gap = gy;
            }
        }
        return best;
    };
    return run_iteration(map, x0, params, max_iter, alpha, select);
}

IterationTrace iterate_co7(const MultiMap& map, int x0, double alpha, int max_iter) {
    if (!(alpha >= 0) || !(alpha < 1.0)) {
        throw ValidationError("co7 iteration requires 0 <= alpha < 1");
    }
    const double tol = map.space().tolerance();
    ConditionParams params;
    params.alpha = alpha;
    auto select = [&](int x) -> int {
        const double bound = alpha * gap(map, x) + tol;
        int best = -1;
        double best_gap = 0;
        for (int y : map.value(x)) {
            if (!map.in_domain(y)) continue;
            const double gy = gap(map, y);
            if (gy > bound) continue;
            if (best < 0 || gy < best_gap) {
                best = y;
                best_gap = gy;
            }
        }
        return best;
    };
    return run_iteration(map, x0, params, max_iter, alpha, select);
}

LimitVerdict resolve_limit(const MultiMap& map, const IterationTrace& trace) {
    if (trace.points.empty()) throw ValidationError("resolve_limit requires a nonempty trace");
    const double tol = map.space().tolerance();
    double ratio = trace.params.alpha + trace.params.epsilon;
    if (!(ratio > 0) || ratio >= 1.0) ratio = 0.9;

    bool summable = true;
    double envelope = trace.steps.empty() ? 0.0 : trace.steps.front();
    for (std::size_t n = 1; n < trace.steps.size(); ++n) {
        envelope *= ratio;
        if (trace.steps[n] > envelope + tol) {
            summable = false;
            break;
        }
    }

    LimitVerdict verdict;
    if (summable) {
        verdict.route = LimitRoute::cauchy;
        verdict.point = trace.points.back();
        verdict.gap_value = gap(map, verdict.point);
    } else {
        verdict.route = LimitRoute::cluster;
        std::size_t best = 0;
        for (std::size_t n = 1; n < trace.gaps.size(); ++n) {
            if (trace.gaps[n] < trace.gaps[best]) best = n;
        }
        verdict.point = trace.points[best];
        verdict.gap_value = trace.gaps[best];
    }
    verdict.fixed = verdict.gap_value <= tol;
    return verdict;
}

}  // namespace setpoint

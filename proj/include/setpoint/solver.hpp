#pragma once

#include "setpoint/trace.hpp"

namespace setpoint {

// Iteration under co3: among value points y with
// alpha*d(y,x) <= (alpha+eps)*d(F(x),x) and d(F(y),y) <= alpha*d(y,x),
// takes the one with the smallest next gap. Stops on a vanishing gap or
// step, on max_iter, or with selection_failed naming the stuck point.
IterationTrace iterate_co3(const MultiMap& map, int x0, double alpha, double eps,
                           int max_iter = 0);

// Nearest-point iteration under co5: steps to the minimum-gap nearest value
// point and verifies d(F(y),y) <= alpha*d(F(x),x).
IterationTrace iterate_nearest(const MultiMap& map, int x0, double alpha, int max_iter = 0);

// Gap-greedy iteration under co7: steps to the value point with the smallest
// gap, requiring d(F(y),y) <= alpha*d(F(x),x). The orbit need not be Cauchy.
IterationTrace iterate_co7(const MultiMap& map, int x0, double alpha, int max_iter = 0);

enum class LimitRoute { cauchy, cluster };

struct LimitVerdict {
    bool fixed = false;
    LimitRoute route = LimitRoute::cauchy;
    int point = -1;
    double gap_value = 0.0;
};

// Fixed-point extraction from a trace. When the steps fit under the geometric
// envelope steps[i] <= (alpha+eps)^i * steps[0], the final point is the Cauchy
// limit; otherwise the minimum-gap trace point stands in for a convergent
// subsequence.
LimitVerdict resolve_limit(const MultiMap& map, const IterationTrace& trace);

}  // namespace setpoint

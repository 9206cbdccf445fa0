#pragma once

#include <string>
#include <vector>

#include "setpoint/conditions.hpp"
#include "setpoint/multimap.hpp"

namespace setpoint {

enum class TraceStatus { converged, max_iter, selection_failed };

std::string trace_status_name(TraceStatus s);

// Orbit of an iteration engine: points x_1..x_L with chosen y_n in F(x_n)
// and x_{n+1} = y_n, the gap d(F(x_n),x_n) per point, and consecutive step
// distances.
struct IterationTrace {
    std::vector<int> points;
    std::vector<int> chosen;   // size points.size()-1
    std::vector<double> gaps;  // size points.size()
    std::vector<double> steps; // size points.size()-1
    ConditionParams params;
    TraceStatus status = TraceStatus::converged;
    int failed_at = -1;  // offending x for selection_failed

    int last_point() const { return points.back(); }
};

}  // namespace setpoint

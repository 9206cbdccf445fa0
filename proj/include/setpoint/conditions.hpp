#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setpoint/multimap.hpp"
#include "setpoint/potential.hpp"

namespace setpoint {

struct IterationTrace;

// Numbered pointwise conditions checked by the lab. Values mirror the
// condition numbering used throughout the reports.
enum class ConditionId {
    co1 = 1, co2, co3, co4, co5, co6, co7, co8, co9, co10, co11, co12, co13,
    co14, co15, co16, co17, co18, co19, co20, co21
};

std::string condition_name(ConditionId id);
ConditionId parse_condition(const std::string& name);

struct ConditionParams {
    double alpha = 0.0;
    double epsilon = 0.0;
    double epsilon1 = 0.0;
    double k = 1.0;
    double beta = 0.0;
    double lambda = 0.0;
};

// Auxiliary data for conditions that need more than scalar parameters:
// a potential (co13), an auxiliary metric (co13, co16), a graph metric
// (co20), or a trace-like sequence with a center point (co11, co12).
struct ConditionInputs {
    const Potential* phi = nullptr;
    const ScaledMetric* delta = nullptr;
    const GraphMetric* graph_delta = nullptr;
    std::vector<int> sequence;
    std::vector<int> chosen;  // y_n for co11; nearest points are used when empty
    int center = -1;
};

// Generic witness record; the populated fields depend on the condition:
// (x)->y for existence over values, (x)->z for descent-type conditions,
// (x,t)->(z,v) for graph conditions. Unused slots stay -1.
struct ConditionWitness {
    int x = -1;
    int y = -1;
    int z = -1;
    int v = -1;
};

struct ConditionReport {
    ConditionId id = ConditionId::co1;
    bool holds = false;
    std::vector<ConditionWitness> witnesses;
    std::optional<ConditionWitness> falsifier;
    bool alpha_zero_convention = false;
    bool vacuous = false;
    std::string note;
};

// Exhaustive quantifier evaluation of one condition over the finite domain.
// Witness tables record the smallest-index satisfier per quantified point.
// Conditions co3/co4/co5/co7 require a self-map; co6, co8-co10 and co19 are
// not standalone checks and are rejected.
ConditionReport check_condition(const MultiMap& map, ConditionId id,
                                const ConditionParams& params,
                                const ConditionInputs& inputs = {});

// Trace-level reading of condition co6: if the gap values vanish along the
// trace then the gap at the trace's final point must vanish too; vacuously
// true otherwise.
ConditionReport check_co6_trace(const MultiMap& map, const IterationTrace& trace);

}  // namespace setpoint

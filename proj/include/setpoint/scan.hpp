#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "setpoint/conditions.hpp"
#include "setpoint/instance_gen.hpp"

namespace setpoint {

struct ConditionSpec {
    ConditionId id = ConditionId::co2;
    ConditionParams params;
};

struct ImplicationPair {
    ConditionSpec hypothesis;
    ConditionSpec conclusion;
};

struct ScanViolation {
    std::uint64_t trial = 0;
    Instance instance;
    ConditionReport hypothesis_report;
    ConditionReport conclusion_report;
};

struct PairScanResult {
    long long checked = 0;  // instances where the hypothesis held
    std::vector<ScanViolation> violations;
};

struct ScanReport {
    long long trials = 0;
    std::vector<PairScanResult> pairs;
    long long total_checked() const;
    long long total_violations() const;
};

// Samples `trials` instances; wherever a hypothesis holds, asserts its
// conclusion. Deterministic in the generator seed; `workers` only splits the
// trial range, the merge is keyed by trial index.
ScanReport implication_scan(const InstanceGenerator& gen, long long trials,
                            const std::vector<ImplicationPair>& pairs, int workers = 1);

struct FoundInstance {
    std::uint64_t trial = 0;
    Instance instance;
    ConditionReport holds_report;
    ConditionReport fails_report;
};

// First sampled instance satisfying `holds` and violating `fails`, re-checked
// before return; nullopt when the budget is exhausted.
std::optional<FoundInstance> counterexample_search(const InstanceGenerator& gen,
                                                   const ConditionSpec& holds,
                                                   const ConditionSpec& fails,
                                                   long long budget);

}  // namespace setpoint

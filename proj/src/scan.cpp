#include "setpoint/scan.hpp"

#include <atomic>
#include <thread>

namespace setpoint {

long long ScanReport::total_checked() const {
    long long s = 0;
    for (const auto& p : pairs) s += p.checked;
    return s;
}

long long ScanReport::total_violations() const {
    long long s = 0;
    for (const auto& p : pairs) s += static_cast<long long>(p.violations.size());
    return s;
}

namespace {

// A condition that does not type-check on the sampled instance (multi-valued
// map under co1, values leaving the domain under co3/co4/co5/co7) simply does
// not put the instance in the hypothesis class.
std::optional<ConditionReport> try_check(const MultiMap& map, const ConditionSpec& spec) {
    try {
        return check_condition(map, spec.id, spec.params);
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

}  // namespace

ScanReport implication_scan(const InstanceGenerator& gen, long long trials,
                            const std::vector<ImplicationPair>& pairs, int workers) {
    if (trials < 1) throw ValidationError("implication scan requires trials >= 1");
    ScanReport report;
    report.trials = trials;
    report.pairs.resize(pairs.size());

    struct TrialOutcome {
        std::size_t pair;
        bool violation;
        ScanViolation details;
    };
    std::vector<std::vector<TrialOutcome>> per_trial(static_cast<std::size_t>(trials));

    auto run_trial = [&](long long t) {
        const Instance inst = gen.sample(static_cast<std::uint64_t>(t));
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto hyp = try_check(*inst.map, pairs[p].hypothesis);
            if (!hyp || !hyp->holds) continue;
            const auto concl = try_check(*inst.map, pairs[p].conclusion);
            const bool ok = concl && concl->holds;
            TrialOutcome outcome{p, !ok, {}};
            if (!ok) {
                outcome.details = ScanViolation{
                    static_cast<std::uint64_t>(t), inst, *hyp,
                    concl ? *concl
                          : ConditionReport{pairs[p].conclusion.id, false, {}, std::nullopt,
                                            false, false, "conclusion not applicable"}};
            }
            per_trial[static_cast<std::size_t>(t)].push_back(std::move(outcome));
        }
    };

    if (workers <= 1) {
        for (long long t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::atomic<long long> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const long long t = cursor.fetch_add(1);
                    if (t >= trials) return;
                    run_trial(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    for (long long t = 0; t < trials; ++t) {
        for (auto& outcome : per_trial[static_cast<std::size_t>(t)]) {
            auto& slot = report.pairs[outcome.pair];
            ++slot.checked;
            if (outcome.violation) slot.violations.push_back(std::move(outcome.details));
        }
    }
    return report;
}

std::optional<FoundInstance> counterexample_search(const InstanceGenerator& gen,
                                                   const ConditionSpec& holds,
                                                   const ConditionSpec& fails,
                                                   long long budget) {
    if (budget < 1) throw ValidationError("counterexample search requires budget >= 1");
    for (long long t = 0; t < budget; ++t) {
        const Instance inst = gen.sample(static_cast<std::uint64_t>(t));
        const auto h = try_check(*inst.map, holds);
        if (!h || !h->holds) continue;
        const auto f = try_check(*inst.map, fails);
        if (!f || f->holds) continue;
        // re-verify before returning
        const ConditionReport h2 = check_condition(*inst.map, holds.id, holds.params);
        const ConditionReport f2 = check_condition(*inst.map, fails.id, fails.params);
        if (h2.holds && !f2.holds) {
            return FoundInstance{static_cast<std::uint64_t>(t), inst, h2, f2};
        }
    }
    return std::nullopt;
}

}  // namespace setpoint

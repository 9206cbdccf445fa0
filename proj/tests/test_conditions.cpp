#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "setpoint/scan.hpp"
#include "setpoint/solver.hpp"

using namespace setpoint;
using namespace setpoint::testing;

namespace {

ConditionParams params_a(double alpha, double eps = 0.0, double eps1 = 0.0, double k = 1.0) {
    ConditionParams p;
    p.alpha = alpha;
    p.epsilon = eps;
    p.epsilon1 = eps1;
    p.k = k;
    return p;
}

}  // namespace

TEST_CASE("co2 on the exact halving map and the line instance") {
    CHECK(check_condition(dyad_exact_map(), ConditionId::co2, params_a(0.5)).holds);

    const MultiMap m = line3_mixed_map();
    const ConditionReport r = check_condition(m, ConditionId::co2, params_a(0.99));
    REQUIRE_FALSE(r.holds);
    REQUIRE(r.falsifier.has_value());
    // the reported pair is a genuine violation as recomputed
    const double lhs = hausdorff(m.space(), m.value(r.falsifier->x), m.value(r.falsifier->y));
    CHECK(lhs > 0.99 * m.space().dist(r.falsifier->x, r.falsifier->y));
    // and the pair (1,2) the instance was built around violates every alpha < 1
    CHECK(hausdorff(m.space(), m.value(1), m.value(2)) == doctest::Approx(2.0));
}

TEST_CASE("co3 on the line instance records the expected witnesses") {
    const MultiMap m = line3_mixed_map();
    const ConditionReport r = check_condition(m, ConditionId::co3, params_a(0.5, 0.1));
    REQUIRE(r.holds);
    REQUIRE(r.witnesses.size() == 3);
    CHECK(r.witnesses[0].x == 0);
    CHECK(r.witnesses[0].y == 0);
    CHECK(r.witnesses[1].x == 1);
    CHECK(r.witnesses[1].y == 0);
    CHECK(r.witnesses[2].x == 2);
    CHECK(r.witnesses[2].y == 2);
}

TEST_CASE("co3 alpha=0 convention") {
    // every value holds a point of vanishing gap
    SpacePtr line = line_space({0, 1});
    const MultiMap m(line, PointSet::all(2), {PointSet::single(0, 2), PointSet::single(0, 2)});
    const ConditionReport r = check_condition(m, ConditionId::co3, params_a(0.0, 0.5));
    CHECK(r.holds);
    CHECK(r.alpha_zero_convention);

    const ConditionReport bad = check_condition(two_cycle_map(), ConditionId::co3,
                                                params_a(0.0, 0.5));
    CHECK_FALSE(bad.holds);
}

TEST_CASE("co3 rejects invalid parameters and non-self maps") {
    CHECK_THROWS_AS(check_condition(line3_mixed_map(), ConditionId::co3, params_a(0.9, 0.2)),
                    ValidationError);
    CHECK_THROWS_AS(check_condition(dyad_exact_map(), ConditionId::co3, params_a(0.5, 0.1)),
                    ValidationError);
}

TEST_CASE("co7 holds when every value contains a fixed point") {
    SpacePtr line = line_space({0, 1, 2});
    const MultiMap m(line, PointSet::all(3),
                     {PointSet::single(0, 3), PointSet({0, 2}, 3), PointSet({0, 1}, 3)});
    // 0 is fixed and reachable from every value set
    CHECK(check_condition(m, ConditionId::co7, params_a(0.5)).holds);
}

TEST_CASE("co4 step condition and its witnesses") {
    const MultiMap quad = quad_map();
    CHECK(check_condition(quad, ConditionId::co4, params_a(1.0 / 3.0)).holds);
    CHECK_FALSE(check_condition(two_cycle_map(), ConditionId::co4, params_a(0.5)).holds);
}

TEST_CASE("co5 nearest-point condition") {
    CHECK(check_condition(dyad_iter_map(), ConditionId::co5, params_a(0.5)).holds);
    CHECK(check_condition(quad_map(), ConditionId::co5, params_a(0.5)).holds);

    // nearest value has a large gap while the far one is fixed
    SpacePtr line = line_space({0, 1, 1.2, 3});
    const MultiMap m(line, PointSet::all(4),
                     {PointSet::single(0, 4), PointSet({2, 3}, 4), PointSet::single(3, 4),
                      PointSet::single(3, 4)});
    const ConditionReport r = check_condition(m, ConditionId::co5, params_a(0.5));
    REQUIRE_FALSE(r.holds);
    CHECK(r.falsifier->x == 1);
}

TEST_CASE("co13 checker distinguishes descending chains from flat potentials") {
    SpacePtr line = line_space({0, 1, 2});
    const MultiMap chain(line, PointSet::all(3),
                         {PointSet::single(0, 3), PointSet::single(0, 3),
                          PointSet::single(1, 3)});
    const ScaledMetric delta = ScaledMetric::scaled(1.0);
    const Potential walk(std::map<int, double>{{0, 0.0}, {1, 1.0}, {2, 2.0}}, 0.0);
    ConditionInputs in;
    in.phi = &walk;
    in.delta = &delta;
    CHECK(check_condition(chain, ConditionId::co13, {}, in).holds);

    const MultiMap swap(line, PointSet::all(3),
                        {PointSet::single(1, 3), PointSet::single(0, 3),
                         PointSet::single(2, 3)});
    const Potential flat(std::map<int, double>{{0, 5.0}, {1, 5.0}, {2, 5.0}}, 0.0);
    ConditionInputs flat_in;
    flat_in.phi = &flat;
    flat_in.delta = &delta;
    const ConditionReport r = check_condition(swap, ConditionId::co13, {}, flat_in);
    REQUIRE_FALSE(r.holds);
    CHECK(r.falsifier->x == 0);
}

TEST_CASE("co14 holds with in-domain values and fails when they leave the domain") {
    // values inside X: the nearest value point of F(x) witnesses co14
    CHECK(check_condition(quad_map(), ConditionId::co14, params_a(0, 0.1)).holds);

    // X = {0,1} inside universe {0,1,2}, both values at 2
    SpacePtr line = line_space({0, 1, 2});
    const MultiMap off(line, PointSet({0, 1}, 3),
                       {PointSet::single(2, 3), PointSet::single(2, 3)});
    const ConditionReport r = check_condition(off, ConditionId::co14, params_a(0, 0.1));
    REQUIRE_FALSE(r.holds);
    CHECK(r.falsifier->x == 1);
}

TEST_CASE("co16/co17/co18/co20 on the quarter map") {
    const MultiMap quad = quad_map();
    const ScaledMetric delta = ScaledMetric::scaled(0.25);
    ConditionInputs in;
    in.delta = &delta;
    CHECK(check_condition(quad, ConditionId::co16, params_a(0, 0, 0, 0.75), in).holds);
    CHECK(check_condition(quad, ConditionId::co17, params_a(0, 0.25, 0.1)).holds);
    CHECK(check_condition(quad, ConditionId::co18, params_a(1.0 / 3.0, 0.25)).holds);

    const GraphMetric gm = graph_metric_from_co18(1.0 / 3.0, 0.25);
    ConditionInputs gin;
    gin.graph_delta = &gm;
    CHECK(check_condition(quad, ConditionId::co20, {}, gin).holds);

    // the two-cycle admits no metric progress, so co16/co18/co20 fail there;
    // co17 keeps holding on any self-map via z = t
    const MultiMap cyc = two_cycle_map();
    ConditionInputs cin;
    cin.delta = &delta;
    CHECK_FALSE(check_condition(cyc, ConditionId::co16, params_a(0, 0, 0, 0.75), cin).holds);
    CHECK(check_condition(cyc, ConditionId::co17, params_a(0, 0.25, 0.1)).holds);
    CHECK_FALSE(check_condition(cyc, ConditionId::co18, params_a(0.5, 0.25)).holds);
    ConditionInputs cgin;
    cgin.graph_delta = &gm;
    CHECK_FALSE(check_condition(cyc, ConditionId::co20, {}, cgin).holds);
}

TEST_CASE("co18 admits the halving-grid arithmetic witness at (1, 1/2)") {
    // 0.25 * max(0.5, 0.25/0.75) = 0.125 <= d(1,0.5) - d(0.5,0.25) = 0.25
    const MultiMap dyad = dyad_full_map();
    const ConditionReport r = check_condition(dyad, ConditionId::co18, params_a(0.5, 0.25));
    REQUIRE(r.holds);
    for (const auto& w : r.witnesses) {
        if (w.x == 0 && w.y == 1) {
            // witness pair for x=1 (index 0), t=1/2 (index 1)
            const MetricSpace& s = dyad.space();
            const double lhs =
                0.25 * std::max(s.dist(0, w.z), s.dist(1, w.v) / 0.75);
            CHECK(lhs <= s.dist(0, 1) - s.dist(w.z, w.v) + 1e-12);
        }
    }
}

TEST_CASE("co21 on gap-improving maps and cycles") {
    const ConditionReport good = check_condition(line3_c21_map(), ConditionId::co21, {});
    CHECK(good.holds);
    const ConditionReport bad = check_condition(two_cycle_map(), ConditionId::co21, {});
    REQUIRE_FALSE(bad.holds);
    CHECK(bad.falsifier->x == 0);
}

TEST_CASE("co11/co12 against a center point") {
    const MultiMap dyad = dyad_full_map();
    ConditionInputs in;
    in.sequence = {0, 1, 2, 3};  // 1, 1/2, 1/4, 1/8
    in.center = 21;              // 0
    CHECK(check_condition(dyad, ConditionId::co12, {}, in).holds);
    CHECK(check_condition(dyad, ConditionId::co11, {}, in).holds);

    // expanding map: F(1) = {2} escapes the ball of radius d(0,1) around F(0)
    SpacePtr line = line_space({0, 1, 2});
    const MultiMap away(line, PointSet::all(3),
                        {PointSet::single(0, 3), PointSet::single(2, 3),
                         PointSet::single(2, 3)});
    ConditionInputs bad;
    bad.sequence = {1};
    bad.center = 0;
    CHECK_FALSE(check_condition(away, ConditionId::co12, {}, bad).holds);
}

TEST_CASE("co6 trace check: convergent, fixed-start and vacuous traces") {
    const MultiMap dyad = dyad_iter_map();
    const IterationTrace t = iterate_co3(dyad, 0, 0.5, 0.1);
    REQUIRE(t.status == TraceStatus::converged);
    CHECK(check_co6_trace(dyad, t).holds);

    IterationTrace fixed;
    fixed.points = {21};
    fixed.gaps = {0.0};
    CHECK(check_co6_trace(dyad, fixed).holds);

    const MultiMap cyc = two_cycle_map();
    IterationTrace stuck;
    stuck.points = {0, 1, 0};
    stuck.chosen = {1, 0};
    stuck.gaps = {1, 1, 1};
    stuck.steps = {1, 1};
    const ConditionReport r = check_co6_trace(cyc, stuck);
    CHECK(r.holds);
    CHECK(r.vacuous);
}

TEST_CASE("reports are deterministic") {
    const MultiMap m = line3_mixed_map();
    const ConditionReport a = check_condition(m, ConditionId::co3, params_a(0.5, 0.1));
    const ConditionReport b = check_condition(m, ConditionId::co3, params_a(0.5, 0.1));
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
        CHECK(a.witnesses[i].x == b.witnesses[i].x);
        CHECK(a.witnesses[i].y == b.witnesses[i].y);
    }
}

TEST_CASE("fitted co2 bound is tight") {
    InstanceGenerator gen(5);
    int used = 0;
    for (std::uint64_t trial = 0; trial < 60 && used < 25; ++trial) {
        const Instance inst = gen.sample(trial);
        const MultiMap& m = *inst.map;
        if (m.domain().size() < 2) continue;
        const double est = lipschitz_estimate(m);
        CHECK(check_condition(m, ConditionId::co2, params_a(est)).holds);
        if (est > 0.02) {
            CHECK_FALSE(check_condition(m, ConditionId::co2, params_a(est - 0.01)).holds);
            ++used;
        }
    }
    CHECK(used > 0);
}

TEST_CASE("implication lattice holds exhaustively on the three-point line") {
    SpacePtr line = line_space({0, 1, 2});
    long long co2_hits = 0, co4_hits = 0, co5_hits = 0;
    for_each_multimap(line, 2, [&](const MultiMap& m) {
        for (double alpha : {0.3, 0.6}) {
            if (check_condition(m, ConditionId::co2, params_a(alpha)).holds) {
                ++co2_hits;
                CHECK(check_condition(m, ConditionId::co3, params_a(alpha, 0.1)).holds);
            }
            if (check_condition(m, ConditionId::co4, params_a(alpha)).holds) {
                ++co4_hits;
                CHECK(check_condition(m, ConditionId::co3, params_a(alpha, 0.1)).holds);
                CHECK(check_condition(m, ConditionId::co3, params_a(alpha, 0.0)).holds);
            }
            if (check_condition(m, ConditionId::co5, params_a(alpha)).holds) {
                ++co5_hits;
                CHECK(check_condition(m, ConditionId::co3, params_a(alpha, 0.0)).holds);
            }
            // gap chain: co3 passes the budget to co7 at alpha+eps
            if (check_condition(m, ConditionId::co3, params_a(alpha, 0.1)).holds) {
                CHECK(check_condition(m, ConditionId::co7, params_a(alpha + 0.1)).holds);
            }
        }
    });
    CHECK(co2_hits > 0);
    CHECK(co4_hits > 0);
    CHECK(co5_hits > 0);
}

TEST_CASE("implication lattice holds exhaustively on the four-point line") {
    SpacePtr line = line_space({0, 1, 2.2, 3.7});
    for_each_multimap(line, 2, [&](const MultiMap& m) {
        for (double alpha : {0.5}) {
            if (check_condition(m, ConditionId::co2, params_a(alpha)).holds) {
                CHECK(check_condition(m, ConditionId::co3, params_a(alpha, 0.1)).holds);
            }
            if (check_condition(m, ConditionId::co4, params_a(alpha)).holds) {
                CHECK(check_condition(m, ConditionId::co3, params_a(alpha, 0.0)).holds);
            }
            if (check_condition(m, ConditionId::co5, params_a(alpha)).holds) {
                CHECK(check_condition(m, ConditionId::co3, params_a(alpha, 0.0)).holds);
            }
        }
    });
}

TEST_CASE("implication scan and counterexample search on random instances") {
    InstanceGenerator gen(99);
    std::vector<ImplicationPair> pairs = {
        {{ConditionId::co2, params_a(0.5)}, {ConditionId::co3, params_a(0.5, 0.1)}},
        {{ConditionId::co3, params_a(0.5, 0.1)}, {ConditionId::co2, params_a(0.5)}},
    };
    const ScanReport report = implication_scan(gen, 400, pairs);
    CHECK(report.pairs[0].checked > 0);
    CHECK(report.pairs[0].violations.empty());
    // the reverse implication is falsifiable
    CHECK_FALSE(report.pairs[1].violations.empty());

    const auto found = counterexample_search(gen, {ConditionId::co3, params_a(0.5, 0.0)},
                                             {ConditionId::co2, params_a(0.99)}, 1000);
    REQUIRE(found.has_value());
    CHECK(found->holds_report.holds);
    CHECK_FALSE(found->fails_report.holds);

    const auto none = counterexample_search(gen, {ConditionId::co2, params_a(0.5)},
                                            {ConditionId::co3, params_a(0.5, 0.1)}, 300);
    CHECK_FALSE(none.has_value());

    CHECK_THROWS_AS(counterexample_search(gen, {ConditionId::co2, params_a(0.5)},
                                          {ConditionId::co3, params_a(0.5, 0.1)}, 0),
                    ValidationError);
}

TEST_CASE("scan results are worker-count independent") {
    InstanceGenerator gen(123);
    std::vector<ImplicationPair> pairs = {
        {{ConditionId::co2, params_a(0.5)}, {ConditionId::co3, params_a(0.5, 0.1)}}};
    const ScanReport serial = implication_scan(gen, 200, pairs, 1);
    const ScanReport parallel = implication_scan(gen, 200, pairs, 4);
    CHECK(serial.pairs[0].checked == parallel.pairs[0].checked);
    CHECK(serial.pairs[0].violations.size() == parallel.pairs[0].violations.size());
}

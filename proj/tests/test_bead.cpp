#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "setpoint/bead.hpp"
#include "setpoint/instance_gen.hpp"

using namespace setpoint;
using namespace setpoint::testing;

namespace {

SpacePtr pair_space(double beta, Norm norm) {
    return plane_space({{0, 0}, {beta, 0}}, norm);
}

// alternating +1/-1 sequence of the given length over the pool {-1,0,1};
// index order: 0 -> -1, 1 -> 0, 2 -> +1
SpacePtr pm_space() { return line_space({-1, 0, 1}); }

std::vector<int> alternating(int length) {
    std::vector<int> seq;
    for (int n = 0; n < length; ++n) seq.push_back(n % 2 == 0 ? 2 : 0);  // +1, -1, ...
    return seq;
}

}  // namespace

TEST_CASE("bead modulus on the euclidean plane reaches the midpoint bound") {
    SpacePtr space = pair_space(1.0, Norm::L2);
    const BeadCertificate cert = bead_modulus(*space, 1.0, 1.0, 20000, 7);
    CHECK_FALSE(cert.failed);
    CHECK_FALSE(cert.vacuous);
    CHECK(cert.delta >= 1.0 / 16.0 - 1e-3);
    CHECK(cert.delta <= 1.0 / 16.0 + 0.05);
    REQUIRE(cert.witnesses.size() == 1);
    REQUIRE(cert.witnesses[0].z_coords.size() == 2);
    CHECK(cert.witnesses[0].z_coords[0] == doctest::Approx(0.5));
    CHECK(cert.witnesses[0].z_coords[1] == doctest::Approx(0.0));
}

TEST_CASE("bead modulus fails on the max-norm plane") {
    SpacePtr space = pair_space(1.0, Norm::LInf);
    const BeadCertificate cert = bead_modulus(*space, 1.0, 1.0, 20000, 7);
    CHECK(cert.failed);
    CHECK(cert.delta < 1e-3);
    REQUIRE(cert.failure_pair.has_value());
    CHECK(cert.failure_pair->first == 0);
    CHECK(cert.failure_pair->second == 1);
}

TEST_CASE("bead modulus is vacuous when no pair reaches beta") {
    SpacePtr space = pair_space(1.0, Norm::L2);
    const BeadCertificate cert = bead_modulus(*space, 0.5, 5.0, 1000, 7);
    CHECK(cert.vacuous);
    CHECK(cert.delta == doctest::Approx(0.5));
}

TEST_CASE("bead modulus euclidean lower bound across a parameter grid") {
    for (double r : {0.5, 1.0, 2.0}) {
        for (double beta : {0.25, 0.5, 1.0}) {
            SpacePtr space = pair_space(beta, Norm::L2);
            const BeadCertificate cert = bead_modulus(*space, r, beta, 4000, 11);
            CHECK_FALSE(cert.failed);
            CHECK(cert.delta >= beta * beta / (16.0 * r) - 1e-3);
        }
    }
}

TEST_CASE("bead modulus on a matrix space scans all points") {
    // three-point path metric: the middle point covers both ends
    auto space = std::make_shared<const MetricSpace>(
        MetricSpace::from_matrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
    const BeadCertificate cert = bead_modulus(*space, 1.0, 2.0, 100, 3);
    CHECK_FALSE(cert.failed);
    for (const auto& w : cert.witnesses) CHECK(w.z_index >= 0);
}

TEST_CASE("family_center on singletons, alternating tails and a shrinking chain") {
    SpacePtr pm = pm_space();
    const PointSet pool = PointSet::all(3);

    const CenterResult single = family_center(*pm, {PointSet({0}, 3)}, pool);
    CHECK(single.radius == 0.0);
    CHECK(single.centers == std::vector<int>{0});

    // tails of the infinite alternating sequence are all {-1, +1}
    const std::vector<PointSet> tails(3, PointSet({0, 2}, 3));
    const CenterResult alt = family_center(*pm, tails, pool);
    CHECK(alt.radius == doctest::Approx(1.0));
    CHECK(alt.centers == std::vector<int>{1});

    const CenterResult chain =
        family_center(*pm, {PointSet({0, 2}, 3), PointSet({2}, 3)}, pool);
    CHECK(chain.radius == 0.0);
    CHECK(chain.centers == std::vector<int>{2});
}

TEST_CASE("family_center validates the shrinking order and rejects growth") {
    SpacePtr pm = pm_space();
    CHECK_THROWS_AS(
        family_center(*pm, {PointSet({0}, 3), PointSet({0, 2}, 3)}, PointSet::all(3)),
        ValidationError);
}

TEST_CASE("family_center radius never grows when a smaller tail is appended") {
    SpacePtr line = line_space({0, 1, 2, 3, 4});
    const PointSet pool = PointSet::all(5);
    const std::vector<PointSet> base = {PointSet({0, 2, 4}, 5), PointSet({2, 4}, 5)};
    const double r0 = family_center(*line, base, pool).radius;
    std::vector<PointSet> more = base;
    more.push_back(PointSet({4}, 5));
    CHECK(family_center(*line, more, pool).radius <= r0 + line->tolerance());
}

TEST_CASE("asymptotic_center: constant, alternating and vanishing sequences") {
    SpacePtr pm = pm_space();
    const PointSet pool = PointSet::all(3);

    const CenterResult c = asymptotic_center(*pm, std::vector<int>(5, 2), pool);
    CHECK(c.radius == 0.0);
    CHECK(c.centers == std::vector<int>{2});

    const CenterResult alt = asymptotic_center(*pm, alternating(16), pool);
    CHECK(alt.radius == doctest::Approx(1.0));
    CHECK(alt.centers == std::vector<int>{1});  // the origin

    // strictly decreasing 2^-n: the tails collapse onto the last point
    SpacePtr dyad = dyad_space();
    std::vector<int> seq;
    for (int k = 1; k <= 16; ++k) seq.push_back(k);  // 2^-1 .. 2^-16
    const CenterResult d = asymptotic_center(*dyad, seq, PointSet::all(dyad->size()));
    CHECK(d.radius == 0.0);
    CHECK(d.centers == std::vector<int>{16});
    CHECK(d.convention.find("injective") != std::string::npos);
}

TEST_CASE("regularity: constant regular, alternating not, decreasing regular") {
    SpacePtr pm = pm_space();
    const PointSet pool = PointSet::all(3);

    CHECK(regularity_check(*pm, std::vector<int>(6, 2), pool).regular);

    const RegularityReport alt = regularity_check(*pm, alternating(8), pool);
    CHECK_FALSE(alt.regular);
    CHECK(alt.radius == doctest::Approx(1.0));
    CHECK(alt.min_radius == 0.0);

    SpacePtr dyad = dyad_space();
    std::vector<int> seq;
    for (int k = 1; k <= 8; ++k) seq.push_back(k);
    CHECK(regularity_check(*dyad, seq, PointSet::all(dyad->size())).regular);
}

TEST_CASE("regular_subsequence picks the all-plus-one subsequence of the alternation") {
    SpacePtr pm = pm_space();
    const PointSet pool = PointSet::all(3);

    // already-regular constant sequence returns itself
    CHECK(regular_subsequence(*pm, std::vector<int>(5, 2), pool) ==
          std::vector<int>{0, 1, 2, 3, 4});

    CHECK(regular_subsequence(*pm, alternating(8), pool) == std::vector<int>{0, 2, 4, 6});

    // two accumulation values at distance 1: a single-value subsequence wins
    SpacePtr line = line_space({0, 1});
    const std::vector<int> two = {0, 1, 0, 1, 0, 1};
    const std::vector<int> picked = regular_subsequence(*line, two, PointSet::all(2));
    CHECK(picked == std::vector<int>{0, 2, 4});
}

TEST_CASE("regular_subsequence radii are stable under its own subsequences") {
    SpacePtr pm = pm_space();
    const PointSet pool = PointSet::all(3);
    const std::vector<int> seq = alternating(8);
    const std::vector<int> w = regular_subsequence(*pm, seq, pool);
    std::vector<int> points;
    for (int p : w) points.push_back(seq[static_cast<std::size_t>(p)]);
    const CenterResult base = asymptotic_center(*pm, points, pool);

    const int total = 1 << points.size();
    for (int mask = 1; mask < total; ++mask) {
        std::vector<int> sub;
        for (std::size_t b = 0; b < points.size(); ++b) {
            if ((mask >> b) & 1) sub.push_back(points[b]);
        }
        const CenterResult cr = asymptotic_center(*pm, sub, pool);
        CHECK(cr.radius == doctest::Approx(base.radius));
        CHECK(cr.centers == base.centers);  // constant subsequence: centers agree too
    }
}

TEST_CASE("selected subsequences are radius-stable under all their subsequences") {
    SpacePtr line = line_space({0, 0.6, 1.4, 2.1});
    const PointSet pool = PointSet::all(4);
    CounterRng rng(3131);
    for (int rep = 0; rep < 40; ++rep) {
        const int len = rng.uniform_int(2, 9);
        std::vector<int> seq;
        for (int n = 0; n < len; ++n) seq.push_back(rng.uniform_int(0, 3));
        const std::vector<int> w = regular_subsequence(*line, seq, pool);
        std::vector<int> points;
        for (int p : w) points.push_back(seq[static_cast<std::size_t>(p)]);
        const CenterResult base = asymptotic_center(*line, points, pool);
        const bool constant =
            std::adjacent_find(points.begin(), points.end(), std::not_equal_to<int>()) ==
            points.end();
        const int total = 1 << points.size();
        for (int mask = 1; mask < total; ++mask) {
            std::vector<int> sub;
            for (std::size_t b = 0; b < points.size(); ++b) {
                if ((mask >> b) & 1) sub.push_back(points[b]);
            }
            const CenterResult cr = asymptotic_center(*line, sub, pool);
            CHECK(cr.radius == doctest::Approx(base.radius));
            if (constant) CHECK(cr.centers == base.centers);
        }
    }
}

TEST_CASE("nonexpansive pipeline on identity, halving grid and the two-cycle") {
    SpacePtr line = line_space({0, 1, 2});
    const MultiMap identity(line, PointSet::all(3),
                            {PointSet::single(0, 3), PointSet::single(1, 3),
                             PointSet::single(2, 3)});
    const NonexpansiveVerdict id = nonexpansive_solve(identity, 1, 0.5);
    CHECK(id.fixed);
    CHECK(id.center == 1);

    const MultiMap dyad = dyad_iter_map();
    const NonexpansiveVerdict v = nonexpansive_solve(dyad, 0, 0.5);
    REQUIRE(v.fixed);
    const std::vector<int> fixed = fixed_points(dyad);
    CHECK(std::find(fixed.begin(), fixed.end(), v.center) != fixed.end());
    REQUIRE(v.co12.has_value());
    CHECK(v.co12->holds);

    const NonexpansiveVerdict cyc = nonexpansive_solve(two_cycle_map(), 0, 0.5);
    CHECK_FALSE(cyc.fixed);
    REQUIRE(cyc.failed_stage.has_value());
    CHECK(*cyc.failed_stage == PipelineStage::gap_sequence);
}

TEST_CASE("nonexpansive pipeline on the quarter-collapse contraction") {
    const MultiMap quad = quad_map();
    const NonexpansiveVerdict v = nonexpansive_solve(quad, 0, 0.5);
    REQUIRE(v.fixed);
    CHECK(v.center == quad.space().size() - 1);  // the origin
    CHECK(v.co12->holds);
}

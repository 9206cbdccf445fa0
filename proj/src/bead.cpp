#include "setpoint/bead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "setpoint/rng.hpp"

namespace setpoint {

namespace {

struct PairProbe {
    int i = -1, j = -1;
    std::vector<std::vector<double>> samples;  // embedded: fixed random draws
};

std::vector<double> midpoint(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> m(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) m[c] = 0.5 * (a[c] + b[c]);
    return m;
}

// Deterministic probes at the intersection bounding box for the current
// radius: corners, center and coordinate-extreme midpoints. Corner probes
// pin down flat-ball geometries that random draws hit only in measure.
std::vector<std::vector<double>> structured_probes(const std::vector<double>& x,
                                                   const std::vector<double>& y, double radius) {
    const std::size_t dim = x.size();
    std::vector<double> lo(dim), hi(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        lo[c] = std::max(x[c], y[c]) - radius;
        hi[c] = std::min(x[c], y[c]) + radius;
        if (lo[c] > hi[c]) return {};
    }
    std::vector<std::vector<double>> probes;
    if (dim <= 10) {
        const std::size_t corners = static_cast<std::size_t>(1) << dim;
        for (std::size_t mask = 0; mask < corners; ++mask) {
            std::vector<double> p(dim);
            for (std::size_t c = 0; c < dim; ++c) p[c] = (mask >> c) & 1 ? hi[c] : lo[c];
            probes.push_back(std::move(p));
        }
    }
    std::vector<double> center(dim);
    for (std::size_t c = 0; c < dim; ++c) center[c] = 0.5 * (lo[c] + hi[c]);
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<double> p = center;
        p[c] = lo[c];
        probes.push_back(p);
        p[c] = hi[c];
        probes.push_back(std::move(p));
    }
    probes.push_back(std::move(center));
    probes.push_back(x);
    probes.push_back(y);
    return probes;
}

struct PassOutcome {
    bool ok = true;
    int fail_i = -1, fail_j = -1;
    std::vector<double> fail_sample;
    int fail_sample_index = -1;
    std::vector<BeadPairWitness> witnesses;
    long long examined = 0;
};

PassOutcome evaluate_delta(const MetricSpace& space, const std::vector<PairProbe>& pairs,
                           double r, double delta) {
    const double tol = space.tolerance();
    PassOutcome out;
    for (const auto& pp : pairs) {
        if (space.is_embedded()) {
            const auto& x = space.coords(pp.i);
            const auto& y = space.coords(pp.j);
            const std::vector<double> z = midpoint(x, y);
            auto probes = structured_probes(x, y, r + delta);
            auto covered = [&](const std::vector<double>& w) -> bool {
                if (std::max(space.norm_dist(w, x), space.norm_dist(w, y)) > r + delta)
                    return true;  // outside the intersection
                ++out.examined;
                return space.norm_dist(w, z) <= r - delta + tol;
            };
            bool bad = false;
            for (const auto& w : probes) {
                if (!covered(w)) {
                    out.ok = false;
                    out.fail_i = pp.i;
                    out.fail_j = pp.j;
                    out.fail_sample = w;
                    bad = true;
                    break;
                }
            }
            if (!bad) {
                for (const auto& w : pp.samples) {
                    if (!covered(w)) {
                        out.ok = false;
                        out.fail_i = pp.i;
                        out.fail_j = pp.j;
                        out.fail_sample = w;
                        bad = true;
                        break;
                    }
                }
            }
            if (bad) return out;
            out.witnesses.push_back({pp.i, pp.j, -1, z});
        } else {
            std::vector<int> members;
            for (int w = 0; w < space.size(); ++w) {
                if (std::max(space.dist(w, pp.i), space.dist(w, pp.j)) <= r + delta) {
                    members.push_back(w);
                }
            }
            out.examined += static_cast<long long>(members.size());
            int chosen = -1;
            for (int z = 0; z < space.size() && chosen < 0; ++z) {
                bool covers = true;
                for (int w : members) {
                    if (space.dist(w, z) > r - delta + tol) {
                        covers = false;
                        break;
                    }
                }
                if (covers) chosen = z;
            }
            if (chosen < 0) {
                out.ok = false;
                out.fail_i = pp.i;
                out.fail_j = pp.j;
                // witness: an intersection member no candidate covers
                out.fail_sample_index = members.empty() ? -1 : members.front();
                return out;
            }
            out.witnesses.push_back({pp.i, pp.j, chosen, {}});
        }
    }
    return out;
}

std::vector<PairProbe> collect_pairs(const MetricSpace& space, double r, double beta,
                                     long long budget, std::uint64_t seed) {
    std::vector<PairProbe> pairs;
    const double tol = space.tolerance();
    for (int i = 0; i < space.size(); ++i) {
        for (int j = i + 1; j < space.size(); ++j) {
            if (space.dist(i, j) < beta - tol) continue;
            PairProbe pp;
            pp.i = i;
            pp.j = j;
            if (space.is_embedded()) {
                const auto& x = space.coords(i);
                const auto& y = space.coords(j);
                const std::size_t dim = x.size();
                std::vector<double> lo(dim), hi(dim);
                bool empty = false;
                for (std::size_t c = 0; c < dim; ++c) {
                    lo[c] = std::max(x[c], y[c]) - 2.0 * r;
                    hi[c] = std::min(x[c], y[c]) + 2.0 * r;
                    if (lo[c] > hi[c]) empty = true;
                }
                if (!empty) {
                    CounterRng rng = CounterRng(seed).stream(
                        static_cast<std::uint64_t>(i) * 1000003ull +
                        static_cast<std::uint64_t>(j));
                    pp.samples.reserve(static_cast<std::size_t>(budget));
                    for (long long s = 0; s < budget; ++s) {
                        std::vector<double> w(dim);
                        for (std::size_t c = 0; c < dim; ++c) w[c] = rng.uniform(lo[c], hi[c]);
                        pp.samples.push_back(std::move(w));
                    }
                }
            }
            pairs.push_back(std::move(pp));
        }
    }
    return pairs;
}

}  // namespace

BeadCertificate bead_modulus(const MetricSpace& space, double r, double beta, long long budget,
                             std::uint64_t seed) {
    if (!(r > 0) || !(beta > 0)) throw ValidationError("bead modulus requires r > 0, beta > 0");
    if (budget < 1) throw ValidationError("bead modulus requires a positive sampling budget");

    BeadCertificate cert;
    cert.r = r;
    cert.beta = beta;

    std::vector<PairProbe> pairs = collect_pairs(space, r, beta, budget, seed);
    if (pairs.empty()) {
        cert.delta = r;
        cert.vacuous = true;
        cert.note = "no point pair at distance >= beta";
        return cert;
    }

    const double floor = 1e-6 * r;
    PassOutcome at_floor = evaluate_delta(space, pairs, r, floor);
    if (!at_floor.ok) {
        // Violations carry a concrete witness; the re-run at 10x budget keeps
        // the certificate honest about sampling flukes.
        std::vector<PairProbe> dense = collect_pairs(space, r, beta, budget * 10, seed + 1);
        PassOutcome confirm = evaluate_delta(space, dense, r, floor);
        const PassOutcome& bad = confirm.ok ? at_floor : confirm;
        cert.delta = 0.0;
        cert.failed = true;
        cert.failure_pair = std::make_pair(bad.fail_i, bad.fail_j);
        cert.failure_sample = bad.fail_sample;
        cert.failure_sample_index = bad.fail_sample_index;
        cert.sampled_points = at_floor.examined + confirm.examined;
        cert.note = "no positive delta certifies the bead inclusion";
        return cert;
    }

    double lo = floor, hi = r;
    if (evaluate_delta(space, pairs, r, r).ok) {
        lo = r;
    } else {
        for (int it = 0; it < 60 && hi - lo > 1e-9; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (evaluate_delta(space, pairs, r, mid).ok) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    PassOutcome final_pass = evaluate_delta(space, pairs, r, lo);
    cert.delta = lo;
    cert.witnesses = std::move(final_pass.witnesses);
    cert.sampled_points = final_pass.examined;
    if (lo >= r) cert.note = "delta capped at r";
    return cert;
}

CenterResult family_center(const MetricSpace& space, const std::vector<PointSet>& family,
                           const PointSet& pool) {
    if (family.empty()) throw ValidationError("family_center requires a nonempty family");
    for (std::size_t k = 1; k < family.size(); ++k) {
        for (int a : family[k]) {
            if (!family[k - 1].contains(a)) {
                throw ValidationError("family member " + std::to_string(k) +
                                      " is not contained in its predecessor");
            }
        }
    }
    CenterResult result;
    result.radius = std::numeric_limits<double>::infinity();
    for (const PointSet& member : family) {
        const ChebyshevResult c = chebyshev(space, member, pool);
        result.tail_radii.push_back(c.radius);
        result.radius = std::min(result.radius, c.radius);
    }
    const double tol = space.tolerance();
    for (int z : pool) {
        double cover = std::numeric_limits<double>::infinity();
        for (const PointSet& member : family) {
            double worst = 0;
            for (int a : member) worst = std::max(worst, space.dist(z, a));
            cover = std::min(cover, worst);
        }
        if (cover <= result.radius + tol) result.centers.push_back(z);
    }
    result.convention = "explicit family";
    return result;
}

namespace {

// Tails of a finite sequence, truncated to the recurrent core: a value seen
// at least twice is read as recurring forever, so tails past its last
// occurrence misrepresent the infinite object and are dropped.
std::vector<PointSet> effective_tails(const MetricSpace& space, const std::vector<int>& seq,
                                      std::string& convention) {
    const std::size_t L = seq.size();
    std::map<int, int> count;
    std::map<int, std::size_t> last;
    for (std::size_t n = 0; n < L; ++n) {
        ++count[seq[n]];
        last[seq[n]] = n;
    }
    std::size_t used = L;
    bool recurrent = false;
    for (const auto& [v, c] : count) {
        if (c >= 2) {
            recurrent = true;
            used = std::min(used, last[v] + 1);
        }
    }
    std::vector<PointSet> tails;
    for (std::size_t n = 0; n < used; ++n) {
        std::vector<int> tail(seq.begin() + static_cast<std::ptrdiff_t>(n), seq.end());
        std::sort(tail.begin(), tail.end());
        tail.erase(std::unique(tail.begin(), tail.end()), tail.end());
        tails.emplace_back(std::move(tail), space.size());
    }
    convention = recurrent
                     ? "finite-truncation: recurrent-core tails 1.." + std::to_string(used) +
                           " of " + std::to_string(L)
                     : "finite-truncation: all tails (injective collapse)";
    return tails;
}

}  // namespace

CenterResult asymptotic_center(const MetricSpace& space, const std::vector<int>& seq,
                               const PointSet& pool) {
    if (seq.empty()) throw ValidationError("asymptotic_center requires a nonempty sequence");
    for (int x : seq) {
        if (x < 0 || x >= space.size()) {
            throw ValidationError("sequence point out of range: " + std::to_string(x));
        }
    }
    std::string convention;
    const std::vector<PointSet> tails = effective_tails(space, seq, convention);
    CenterResult result = family_center(space, tails, pool);
    result.convention = convention;
    return result;
}

namespace {

struct SubseqCandidate {
    std::vector<int> positions;
    double radius = 0;
    int distinct = 0;
};

// Ranking for the regular-subsequence surrogate: minimal radius first, then
// the fewest distinct values (a constant representative when one exists),
// then maximal length, then position order.
bool better(const SubseqCandidate& a, const SubseqCandidate& b, double tol) {
    if (a.radius < b.radius - tol) return true;
    if (b.radius < a.radius - tol) return false;
    if (a.distinct != b.distinct) return a.distinct < b.distinct;
    if (a.positions.size() != b.positions.size()) return a.positions.size() > b.positions.size();
    return a.positions < b.positions;
}

std::set<std::vector<int>> enumerate_positions(std::size_t L, long long budget,
                                               const std::vector<int>& seq, std::uint64_t seed) {
    std::set<std::vector<int>> out;
    if (L <= 12) {
        const std::size_t total = static_cast<std::size_t>(1) << L;
        for (std::size_t mask = 1; mask < total; ++mask) {
            std::vector<int> pos;
            for (std::size_t b = 0; b < L; ++b) {
                if ((mask >> b) & 1) pos.push_back(static_cast<int>(b));
            }
            out.insert(std::move(pos));
        }
        return out;
    }
    std::vector<int> full(L);
    for (std::size_t b = 0; b < L; ++b) full[b] = static_cast<int>(b);
    out.insert(full);
    for (std::size_t n = 1; n < L; ++n) {
        out.insert(std::vector<int>(full.begin() + static_cast<std::ptrdiff_t>(n), full.end()));
    }
    std::map<int, std::vector<int>> by_value;
    for (std::size_t n = 0; n < L; ++n) by_value[seq[n]].push_back(static_cast<int>(n));
    for (const auto& [v, pos] : by_value) out.insert(pos);
    CounterRng rng = CounterRng(seed).stream(0xceceull);
    while (static_cast<long long>(out.size()) < budget) {
        std::vector<int> pos;
        for (std::size_t b = 0; b < L; ++b) {
            if (rng.chance(0.5)) pos.push_back(static_cast<int>(b));
        }
        if (pos.empty()) continue;
        out.insert(std::move(pos));
    }
    return out;
}

SubseqCandidate best_subsequence(const MetricSpace& space, const std::vector<int>& seq,
                                 const PointSet& pool, long long budget, std::uint64_t seed,
                                 long long* checked, bool* all_equal, double full_radius) {
    const double tol = space.tolerance();
    const auto candidates = enumerate_positions(seq.size(), budget, seq, seed);
    SubseqCandidate best;
    best.radius = std::numeric_limits<double>::infinity();
    if (checked) *checked = 0;
    if (all_equal) *all_equal = true;
    for (const auto& pos : candidates) {
        std::vector<int> sub;
        sub.reserve(pos.size());
        for (int p : pos) sub.push_back(seq[static_cast<std::size_t>(p)]);
        std::vector<int> values = sub;
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        SubseqCandidate cand{pos, asymptotic_center(space, sub, pool).radius,
                             static_cast<int>(values.size())};
        if (checked) ++*checked;
        if (all_equal && std::abs(cand.radius - full_radius) > tol) *all_equal = false;
        if (better(cand, best, tol)) best = std::move(cand);
    }
    return best;
}

}  // namespace

RegularityReport regularity_check(const MetricSpace& space, const std::vector<int>& seq,
                                  const PointSet& pool, long long budget, std::uint64_t seed) {
    if (seq.size() < 2) throw ValidationError("regularity_check requires length >= 2");
    RegularityReport report;
    report.radius = asymptotic_center(space, seq, pool).radius;
    bool all_equal = true;
    const SubseqCandidate best = best_subsequence(space, seq, pool, budget, seed,
                                                  &report.checked, &all_equal, report.radius);
    report.regular = all_equal;
    report.min_positions = best.positions;
    report.min_radius = best.radius;
    return report;
}

std::vector<int> regular_subsequence(const MetricSpace& space, const std::vector<int>& seq,
                                     const PointSet& pool, long long budget,
                                     std::uint64_t seed) {
    if (seq.empty()) throw ValidationError("regular_subsequence requires a nonempty sequence");
    if (seq.size() == 1) return {0};
    const double full = asymptotic_center(space, seq, pool).radius;
    return best_subsequence(space, seq, pool, budget, seed, nullptr, nullptr, full).positions;
}

std::string pipeline_stage_name(PipelineStage s) {
    switch (s) {
        case PipelineStage::gap_sequence: return "gap_sequence";
        case PipelineStage::subsequence: return "subsequence";
        case PipelineStage::center: return "center";
        case PipelineStage::tail_conditions: return "tail_conditions";
        case PipelineStage::membership: return "membership";
    }
    return "gap_sequence";
}

NonexpansiveVerdict nonexpansive_solve(const MultiMap& map, int x0, double alpha) {
    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    NonexpansiveVerdict verdict;

    verdict.trace = iterate_co7(map, x0, alpha);
    if (verdict.trace.status == TraceStatus::selection_failed ||
        verdict.trace.gaps.back() > tol) {
        verdict.failed_stage = PipelineStage::gap_sequence;
        verdict.note = "no gap-vanishing orbit from this start";
        return verdict;
    }

    const PointSet pool = PointSet::all(space.size());
    verdict.subsequence_positions = regular_subsequence(space, verdict.trace.points, pool);
    if (verdict.subsequence_positions.empty()) {
        verdict.failed_stage = PipelineStage::subsequence;
        return verdict;
    }
    {
        // When the whole orbit already attains the minimal radius, keep it:
        // its tails carry the limit, which is what the center stage needs.
        std::vector<int> sub;
        for (int p : verdict.subsequence_positions) {
            sub.push_back(verdict.trace.points[static_cast<std::size_t>(p)]);
        }
        const double sub_radius = asymptotic_center(space, sub, pool).radius;
        const double full_radius =
            asymptotic_center(space, verdict.trace.points, pool).radius;
        if (full_radius <= sub_radius + space.tolerance()) {
            verdict.subsequence_positions.resize(verdict.trace.points.size());
            for (std::size_t p = 0; p < verdict.trace.points.size(); ++p) {
                verdict.subsequence_positions[p] = static_cast<int>(p);
            }
        }
    }
    std::vector<int> sub;
    sub.reserve(verdict.subsequence_positions.size());
    for (int p : verdict.subsequence_positions) {
        sub.push_back(verdict.trace.points[static_cast<std::size_t>(p)]);
    }

    verdict.center_result = asymptotic_center(space, sub, pool);
    if (verdict.center_result.centers.empty()) {
        verdict.failed_stage = PipelineStage::center;
        return verdict;
    }
    verdict.center = verdict.center_result.centers.front();
    if (!map.in_domain(verdict.center)) {
        verdict.failed_stage = PipelineStage::center;
        verdict.note = "asymptotic center lies outside the map domain";
        return verdict;
    }

    ConditionInputs inputs;
    inputs.sequence = sub;
    inputs.center = verdict.center;
    verdict.co12 = check_condition(map, ConditionId::co12, {}, inputs);
    verdict.co11 = check_condition(map, ConditionId::co11, {}, inputs);
    {
        // limsup surrogate on the trailing element of the subsequence
        const int x_last = sub.back();
        const int y_last = nearest_point(space, x_last, map.value(x_last));
        ConditionReport co10{ConditionId::co10, false, {}, std::nullopt, false, false, ""};
        co10.holds = point_set_dist(space, y_last, map.value(verdict.center)) <=
                     space.dist(verdict.center, x_last) + tol;
        if (!co10.holds) co10.falsifier = ConditionWitness{x_last, y_last, -1, -1};
        verdict.co10 = co10;
    }
    if (!verdict.co12->holds && !verdict.co11->holds && !verdict.co10->holds) {
        verdict.failed_stage = PipelineStage::tail_conditions;
        return verdict;
    }

    verdict.fixed = map.value(verdict.center).contains(verdict.center);
    if (!verdict.fixed) verdict.failed_stage = PipelineStage::membership;
    return verdict;
}

}  // namespace setpoint

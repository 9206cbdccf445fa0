#include "setpoint/inward.hpp"

#include <algorithm>
#include <cmath>

namespace setpoint {

std::string inward_verdict_name(InwardVerdictKind v) {
    switch (v) {
        case InwardVerdictKind::member: return "member";
        case InwardVerdictKind::numerical_member: return "numerical_member";
        case InwardVerdictKind::non_member: return "non_member";
    }
    return "non_member";
}

NormedInwardWitness inward_membership_normed(const MetricSpace& space, const PointSet& X,
                                             int x, const std::vector<double>& t) {
    if (!space.is_embedded()) {
        throw ValidationError("inward membership needs linear structure; matrix spaces are "
                              "unsupported");
    }
    if (!X.contains(x)) throw ValidationError("x must belong to X");
    const double tol = space.tolerance();
    const auto& xc = space.coords(x);
    if (t.size() != xc.size()) throw ValidationError("target point dimension mismatch");

    const double wnorm = space.norm_dist(t, xc);
    if (wnorm <= tol) return {true, 1.0, x};

    constexpr double kLambdaMax = 1e6;
    for (int z : X) {
        if (z == x) continue;
        const auto& zc = space.coords(z);
        // exact ray coefficient: t - x = lambda (z - x)
        double vv = 0, wv = 0;
        for (std::size_t c = 0; c < xc.size(); ++c) {
            const double v = zc[c] - xc[c];
            vv += v * v;
            wv += (t[c] - xc[c]) * v;
        }
        const double lambda = wv / vv;
        if (lambda < 1.0 - tol || lambda > kLambdaMax) continue;
        std::vector<double> probe(xc.size());
        for (std::size_t c = 0; c < xc.size(); ++c) {
            probe[c] = xc[c] + lambda * (zc[c] - xc[c]);
        }
        if (space.norm_dist(probe, t) <= tol * (1.0 + wnorm)) {
            return {true, lambda, z};
        }
    }
    return {false, 0.0, -1};
}

namespace {

std::vector<double> default_schedule() {
    std::vector<double> s;
    for (int k = 1; k <= 20; ++k) s.push_back(std::ldexp(1.0, -k));
    return s;
}

struct SegmentCandidate {
    SegmentSample s;
    double dxs = 0;  // d(x, s)
    double dist_to(const MetricSpace& space, int z) const {
        if (s.index >= 0) return space.dist(z, s.index);
        return space.norm_dist(space.coords(z), s.coords);
    }
};

std::vector<SegmentCandidate> segment_candidates(const MetricSpace& space, int x, int t) {
    std::vector<SegmentCandidate> out;
    for (int s : metric_segment(space, x, t)) {
        if (s == x) continue;
        SegmentCandidate c;
        c.s.index = s;
        c.dxs = space.dist(x, s);
        out.push_back(std::move(c));
    }
    if (space.is_embedded()) {
        const auto& xc = space.coords(x);
        const auto& tc = space.coords(t);
        const double dxt = space.dist(x, t);
        for (int j = 1; j <= 40; ++j) {
            const double theta = std::ldexp(1.0, -j);
            // samples too close to x drown the beta bound in the tolerance
            if (theta * dxt <= 10.0 * space.tolerance()) break;
            SegmentCandidate c;
            c.s.coords.resize(xc.size());
            for (std::size_t k = 0; k < xc.size(); ++k) {
                c.s.coords[k] = xc[k] + theta * (tc[k] - xc[k]);
            }
            c.dxs = theta * dxt;
            out.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace

InwardCertificate generalized_inward_membership(const MetricSpace& space, const PointSet& X,
                                                int x, int t, std::vector<double> schedule) {
    if (!X.contains(x)) throw ValidationError("x must belong to X");
    if (t < 0 || t >= space.size()) throw ValidationError("target index out of range");
    if (schedule.empty()) schedule = default_schedule();
    for (std::size_t k = 1; k < schedule.size(); ++k) {
        if (!(schedule[k] < schedule[k - 1])) {
            throw ValidationError("beta schedule must be strictly decreasing");
        }
    }

    InwardCertificate cert;
    cert.x = x;
    cert.t = t;
    cert.betas = schedule;
    const double tol = space.tolerance();

    if (t == x || X.contains(t)) {
        for (double beta : schedule) {
            BetaWitness w;
            w.beta = beta;
            w.s.index = t;
            w.z = t;
            w.dzs = 0.0;
            w.dxs = space.dist(x, t);
            cert.per_beta.push_back(std::move(w));
        }
        cert.verdict = InwardVerdictKind::member;
        return cert;
    }

    const std::vector<SegmentCandidate> candidates = segment_candidates(space, x, t);
    bool exact_throughout = true;
    for (double beta : schedule) {
        bool found = false;
        for (const auto& cand : candidates) {
            if (found) break;
            for (int z : X) {
                const double dzs = cand.dist_to(space, z);
                if (dzs <= beta * cand.dxs + tol) {
                    BetaWitness w;
                    w.beta = beta;
                    w.s = cand.s;
                    w.z = z;
                    w.dzs = dzs;
                    w.dxs = cand.dxs;
                    if (dzs > tol) exact_throughout = false;
                    cert.per_beta.push_back(std::move(w));
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            cert.verdict = InwardVerdictKind::non_member;
            cert.beta_fail = beta;
            return cert;
        }
    }
    cert.verdict = exact_throughout ? InwardVerdictKind::member
                                    : InwardVerdictKind::numerical_member;
    return cert;
}

Lemma35Result lemma35_witness(const MetricSpace& space, const PointSet& X, int x, int t,
                              double eps, const InwardCertificate& cert, const PointSet* C) {
    if (!(eps > 0) || !(eps < 1)) throw ValidationError("lemma witness requires eps in (0,1)");
    if (cert.verdict == InwardVerdictKind::non_member) {
        throw ValidationError("lemma witness requires a membership certificate");
    }
    const double tol = space.tolerance();
    const double beta_bound = eps / (2.0 + eps);  // 2 beta / (1 - beta) <= eps

    Lemma35Result result;
    bool have_entry = false;
    // deepest-first fallback keeps the verification robust near the bound
    for (std::size_t k = 0; k < cert.per_beta.size(); ++k) {
        const BetaWitness& w = cert.per_beta[k];
        if (w.beta > beta_bound) continue;
        have_entry = true;
        result.z = w.z;
        result.beta_used = w.beta;
        result.lhs = (1.0 - eps) * space.dist(x, result.z);
        result.rhs = space.dist(x, t) - space.dist(result.z, t);
        result.inequality_ok = result.lhs <= result.rhs + tol;
        if (C) {
            result.set_lhs = result.lhs;
            result.set_rhs = point_set_dist(space, x, *C) - point_set_dist(space, result.z, *C);
            result.set_inequality_ok = result.set_lhs <= result.set_rhs + tol;
        }
        if (result.inequality_ok && (!C || result.set_inequality_ok)) return result;
    }
    if (!have_entry) {
        throw ValidationError("beta schedule does not reach the lemma bound " +
                              std::to_string(beta_bound) + " for eps " + std::to_string(eps));
    }
    (void)X;
    return result;
}

InwardSolveVerdict inward_contraction_solve(const MultiMap& map, int x0, double alpha,
                                            double eps, InwardMode mode) {
    if (!(alpha >= 0) || alpha >= 1.0) {
        throw ValidationError("inward solve requires 0 <= alpha < 1");
    }
    if (mode == InwardMode::generalized && !(eps > 0 && alpha + eps < 1.0)) {
        throw ValidationError("generalized inward solve requires eps > 0 with alpha + eps < 1");
    }
    if (mode == InwardMode::normed_inward) {
        if (!map.space().is_embedded()) {
            throw ValidationError("normed inward solve requires an embedded space");
        }
        eps = 0.0;
    }
    if (!map.in_domain(x0)) throw ValidationError("start point is outside the domain");

    const MetricSpace& space = map.space();
    const double tol = space.tolerance();
    const double coeff = 1.0 - alpha - eps;

    InwardSolveVerdict verdict;
    const ConditionParams co2_params{alpha, 0, 0, 1, 0, 0};
    verdict.co2_report = check_condition(map, ConditionId::co2, co2_params);
    if (!verdict.co2_report.holds) {
        verdict.failed_stage = "contraction";
        return verdict;
    }

    int x = x0;
    const int max_moves = static_cast<int>(map.domain().size()) + 1;
    for (int n = 0; n < max_moves; ++n) {
        if (map.value(x).contains(x)) {
            verdict.fixed = true;
            verdict.point = x;
            return verdict;
        }
        const int t = nearest_point(space, x, map.value(x));
        int z = -1;
        if (mode == InwardMode::normed_inward) {
            const NormedInwardWitness w =
                inward_membership_normed(space, map.domain(), x, space.coords(t));
            if (!w.member) {
                verdict.failed_stage = "inwardness";
                verdict.point = x;
                return verdict;
            }
            z = w.z;
        } else {
            const InwardCertificate cert =
                generalized_inward_membership(space, map.domain(), x, t);
            if (cert.verdict == InwardVerdictKind::non_member) {
                verdict.failed_stage = "inwardness";
                verdict.point = x;
                return verdict;
            }
            const Lemma35Result lw =
                lemma35_witness(space, map.domain(), x, t, eps, cert, &map.value(x));
            if (!lw.inequality_ok || !lw.set_inequality_ok) {
                verdict.failed_stage = "lemma_witness";
                verdict.point = x;
                return verdict;
            }
            z = lw.z;
        }
        if (z == x || !map.in_domain(z)) {
            verdict.failed_stage = "witness_range";
            verdict.point = x;
            return verdict;
        }
        const double gx = gap(map, x), gz = gap(map, z);
        if (coeff * space.dist(x, z) > gx - gz + 4.0 * tol) {
            verdict.failed_stage = "co15";
            verdict.point = x;
            return verdict;
        }
        if (gz >= gx - tol && gz > tol) {
            verdict.failed_stage = "stall";
            verdict.point = x;
            return verdict;
        }
        verdict.moves.push_back({x, z, gx, gz});
        x = z;
    }
    verdict.failed_stage = "max_iter";
    verdict.point = x;
    return verdict;
}

MinGapVerdict compact_min_gap(const MultiMap& map) {
    const double tol = map.space().tolerance();
    MinGapVerdict verdict;
    verdict.co21 = check_condition(map, ConditionId::co21, {});
    verdict.minimizer = map.domain()[0];
    verdict.min_gap = gap(map, verdict.minimizer);
    for (int x : map.domain()) {
        const double g = gap(map, x);
        if (g < verdict.min_gap) {
            verdict.min_gap = g;
            verdict.minimizer = x;
        }
    }
    verdict.fixed = verdict.min_gap <= tol;
    return verdict;
}

}  // namespace setpoint

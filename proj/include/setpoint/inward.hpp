#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setpoint/conditions.hpp"
#include "setpoint/descent.hpp"

namespace setpoint {

struct NormedInwardWitness {
    bool member = false;
    double lambda = 0;
    int z = -1;
};

// Membership of a target point in the inward set of x relative to X in a
// normed (embedded) space: t = x + lambda (z - x) for some z in X and
// lambda >= 1. Solved per z via the exact ray coefficient; lambda is capped
// at 1e6, beyond which z coincides with x up to tolerance anyway.
NormedInwardWitness inward_membership_normed(const MetricSpace& space, const PointSet& X,
                                             int x, const std::vector<double>& t);

enum class InwardVerdictKind { member, numerical_member, non_member };

std::string inward_verdict_name(InwardVerdictKind v);

struct SegmentSample {
    int index = -1;                // space point, when the sample is one
    std::vector<double> coords;    // embedded parametric sample
};

struct BetaWitness {
    double beta = 0;
    SegmentSample s;
    int z = -1;
    double dzs = 0, dxs = 0;
};

struct InwardCertificate {
    int x = -1, t = -1;
    std::vector<double> betas;
    std::vector<BetaWitness> per_beta;
    InwardVerdictKind verdict = InwardVerdictKind::non_member;
    double beta_fail = -1;
};

// Generalized inward membership: per beta in the (decreasing) schedule an
// s in (x,t] and a z in X with d(z,s) <= beta d(x,s). Segment samples are
// on-segment space points plus, for embedded spaces, parametric points
// accumulating geometrically at x. `member` is reserved for witnesses valid
// at every beta (d(z,s)=0); otherwise a full schedule yields
// numerical_member.
InwardCertificate generalized_inward_membership(const MetricSpace& space, const PointSet& X,
                                                int x, int t,
                                                std::vector<double> schedule = {});

struct Lemma35Result {
    int z = -1;
    double beta_used = 0;
    bool inequality_ok = false;      // (1-eps) d(x,z) <= d(x,t) - d(z,t)
    double lhs = 0, rhs = 0;
    bool set_inequality_ok = true;   // (1-eps) d(x,z) <= d(x,C) - d(z,C), when C given
    double set_lhs = 0, set_rhs = 0;
};

// Extracts the descent step z from an inwardness certificate at a beta small
// enough that 2 beta / (1 - beta) <= eps, and re-verifies the resulting
// inequalities.
Lemma35Result lemma35_witness(const MetricSpace& space, const PointSet& X, int x, int t,
                              double eps, const InwardCertificate& cert,
                              const PointSet* C = nullptr);

enum class InwardMode { generalized, normed_inward };

struct InwardSolveVerdict {
    bool fixed = false;
    int point = -1;
    std::string failed_stage;  // empty on success
    std::vector<DescentMove> moves;
    ConditionReport co2_report;
};

// Contraction solve through inwardness: at each step certify that the
// nearest value point is inward, extract z (lemma witness in generalized
// mode, the ray identity in normed mode), verify the co15 inequality and
// move. The gap strictly decreases, so the loop terminates on finite
// domains.
InwardSolveVerdict inward_contraction_solve(const MultiMap& map, int x0, double alpha,
                                            double eps, InwardMode mode);

struct MinGapVerdict {
    bool fixed = false;
    int minimizer = -1;
    double min_gap = 0;
    ConditionReport co21;
};

// Full-scan gap minimization: a co21 certificate forces the minimum to be a
// fixed point; otherwise the co21 violation is reported.
MinGapVerdict compact_min_gap(const MultiMap& map);

}  // namespace setpoint

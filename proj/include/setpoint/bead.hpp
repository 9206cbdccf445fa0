#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setpoint/conditions.hpp"
#include "setpoint/solver.hpp"

namespace setpoint {

struct BeadPairWitness {
    int x = -1, y = -1;
    int z_index = -1;                // matrix spaces
    std::vector<double> z_coords;    // embedded spaces (midpoint)
};

// Outcome of the bead-modulus search for one (r, beta): the largest delta in
// [0, r] for which every qualifying pair's shrunken ball intersection fits in
// a ball of radius r - delta around some witness z, or a failure certificate.
struct BeadCertificate {
    double r = 0, beta = 0, delta = 0;
    bool failed = false;
    bool vacuous = false;
    std::vector<BeadPairWitness> witnesses;
    std::optional<std::pair<int, int>> failure_pair;
    std::vector<double> failure_sample;  // violating intersection point (embedded)
    int failure_sample_index = -1;       // violating point (matrix)
    long long sampled_points = 0;
    std::string note;
};

BeadCertificate bead_modulus(const MetricSpace& space, double r, double beta,
                             long long budget = 10000, std::uint64_t seed = 0);

// Covering radius and central points of a shrinking family of sets, per the
// candidate pool.
struct CenterResult {
    double radius = 0;
    std::vector<int> centers;
    std::vector<double> tail_radii;
    std::string convention;
};

CenterResult family_center(const MetricSpace& space, const std::vector<PointSet>& family,
                           const PointSet& pool);

// Centers of the tail family of a finite sequence. Finite-truncation
// convention: values occurring at least twice are treated as recurring
// forever, so tails are used only while they still contain every recurrent
// value; injective sequences keep all tails and collapse onto the final
// point.
CenterResult asymptotic_center(const MetricSpace& space, const std::vector<int>& seq,
                               const PointSet& pool);

struct RegularityReport {
    bool regular = false;
    double radius = 0;
    long long checked = 0;
    std::vector<int> min_positions;  // positions into the sequence
    double min_radius = 0;
};

// A sequence is regular when every checked subsequence has the same
// asymptotic radius. Subsequences are enumerated exhaustively up to length
// 12 and sampled beyond (always including tails, per-value constant
// subsequences and the full sequence).
RegularityReport regularity_check(const MetricSpace& space, const std::vector<int>& seq,
                                  const PointSet& pool, long long budget = 2000,
                                  std::uint64_t seed = 0);

// The checked subsequence of minimal asymptotic radius; ties prefer maximal
// length, then lexicographically smallest positions.
std::vector<int> regular_subsequence(const MetricSpace& space, const std::vector<int>& seq,
                                     const PointSet& pool, long long budget = 2000,
                                     std::uint64_t seed = 0);

enum class PipelineStage { gap_sequence, subsequence, center, tail_conditions, membership };

std::string pipeline_stage_name(PipelineStage s);

struct NonexpansiveVerdict {
    bool fixed = false;
    int center = -1;
    std::optional<PipelineStage> failed_stage;
    IterationTrace trace;
    std::vector<int> subsequence_positions;
    CenterResult center_result;
    std::optional<ConditionReport> co12, co11, co10;
    std::string note;
};

// Gap-vanishing orbit -> regular subsequence -> asymptotic center ->
// co12/co11/co10 verification -> membership check at the center.
NonexpansiveVerdict nonexpansive_solve(const MultiMap& map, int x0, double alpha);

}  // namespace setpoint

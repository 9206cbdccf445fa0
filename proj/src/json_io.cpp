#include "setpoint/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace setpoint {

namespace {

Json witness_to_json(const ConditionWitness& w) {
    Json j = Json::object();
    if (w.x >= 0) j["x"] = w.x;
    if (w.y >= 0) j["y"] = w.y;
    if (w.z >= 0) j["z"] = w.z;
    if (w.v >= 0) j["v"] = w.v;
    return j;
}

Json pair_to_json(const GraphPair& p) { return Json::array({p.x, p.t}); }

}  // namespace

Json space_to_json(const MetricSpace& space) {
    Json j;
    if (space.is_embedded()) {
        j["kind"] = "embedded";
        j["norm"] = norm_name(space.norm());
        if (space.norm() == Norm::Lp) j["p"] = space.norm_p();
        Json pts = Json::array();
        for (int i = 0; i < space.size(); ++i) pts.push_back(space.coords(i));
        j["points"] = std::move(pts);
    } else {
        j["kind"] = "matrix";
        Json d = Json::array();
        for (int i = 0; i < space.size(); ++i) {
            Json row = Json::array();
            for (int k = 0; k < space.size(); ++k) row.push_back(space.dist(i, k));
            d.push_back(std::move(row));
        }
        j["d"] = std::move(d);
    }
    j["tolerance"] = space.tolerance();
    return j;
}

Json map_to_json(const MultiMap& map) {
    Json j;
    j["domain"] = map.domain().indices();
    Json values = Json::object();
    for (int x : map.domain()) {
        values[std::to_string(x)] = map.value(x).indices();
    }
    j["values"] = std::move(values);
    return j;
}

Json instance_to_json(const Instance& inst) {
    Json j;
    j["seed"] = inst.seed;
    j["family"] = inst.family;
    j["space"] = space_to_json(*inst.space);
    if (inst.map) j["map"] = map_to_json(*inst.map);
    return j;
}

Json to_json(const MetricValidation& v) {
    Json j;
    j["valid"] = v.valid();
    Json list = Json::array();
    for (const auto& viol : v.violations) {
        Json e;
        switch (viol.axiom) {
            case MetricViolation::Axiom::Diagonal: e["axiom"] = "diagonal"; break;
            case MetricViolation::Axiom::Symmetry: e["axiom"] = "symmetry"; break;
            case MetricViolation::Axiom::Positivity: e["axiom"] = "positivity"; break;
            case MetricViolation::Axiom::Triangle: e["axiom"] = "triangle"; break;
        }
        e["i"] = viol.i;
        e["j"] = viol.j;
        if (viol.k >= 0) e["k"] = viol.k;
        e["lhs"] = viol.lhs;
        e["rhs"] = viol.rhs;
        list.push_back(std::move(e));
    }
    j["violations"] = std::move(list);
    return j;
}

Json to_json(const ConditionReport& r) {
    Json j;
    j["id"] = condition_name(r.id);
    j["holds"] = r.holds;
    if (r.alpha_zero_convention) j["alpha_zero_convention"] = true;
    if (r.vacuous) j["vacuous"] = true;
    Json w = Json::array();
    for (const auto& e : r.witnesses) w.push_back(witness_to_json(e));
    j["witnesses"] = std::move(w);
    j["falsifier"] = r.falsifier ? witness_to_json(*r.falsifier) : Json();
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json to_json(const IterationTrace& t) {
    Json j;
    j["points"] = t.points;
    j["chosen"] = t.chosen;
    j["gaps"] = t.gaps;
    j["steps"] = t.steps;
    j["status"] = trace_status_name(t.status);
    if (t.failed_at >= 0) j["failed_at"] = t.failed_at;
    Json params;
    params["alpha"] = t.params.alpha;
    params["epsilon"] = t.params.epsilon;
    j["params"] = std::move(params);
    return j;
}

Json to_json(const LimitVerdict& v) {
    Json j;
    j["fixed"] = v.fixed;
    j["route"] = v.route == LimitRoute::cauchy ? "cauchy" : "cluster";
    j["point"] = v.point;
    j["gap"] = v.gap_value;
    return j;
}

Json to_json(const BeadCertificate& c) {
    Json j;
    j["r"] = c.r;
    j["beta"] = c.beta;
    j["delta"] = c.delta;
    j["failed"] = c.failed;
    j["vacuous"] = c.vacuous;
    j["sampled_points"] = c.sampled_points;
    Json w = Json::array();
    for (const auto& e : c.witnesses) {
        Json wj;
        wj["pair"] = Json::array({e.x, e.y});
        if (e.z_index >= 0) wj["z"] = e.z_index;
        if (!e.z_coords.empty()) wj["z_coords"] = e.z_coords;
        w.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(w);
    if (c.failure_pair) {
        j["failure_pair"] = Json::array({c.failure_pair->first, c.failure_pair->second});
        if (!c.failure_sample.empty()) j["failure_sample"] = c.failure_sample;
        if (c.failure_sample_index >= 0) j["failure_sample_index"] = c.failure_sample_index;
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

Json to_json(const CenterResult& c) {
    Json j;
    j["radius"] = c.radius;
    j["centers"] = c.centers;
    j["tail_radii"] = c.tail_radii;
    j["convention"] = c.convention;
    return j;
}

Json to_json(const RegularityReport& r) {
    Json j;
    j["regular"] = r.regular;
    j["radius"] = r.radius;
    j["checked"] = r.checked;
    j["min_positions"] = r.min_positions;
    j["min_radius"] = r.min_radius;
    return j;
}

Json to_json(const NonexpansiveVerdict& v) {
    Json j;
    j["fixed"] = v.fixed;
    j["center"] = v.center;
    j["failed_stage"] = v.failed_stage ? Json(pipeline_stage_name(*v.failed_stage)) : Json();
    j["trace"] = to_json(v.trace);
    j["subsequence_positions"] = v.subsequence_positions;
    j["center_result"] = to_json(v.center_result);
    if (v.co12) j["co12"] = to_json(*v.co12);
    if (v.co11) j["co11"] = to_json(*v.co11);
    if (v.co10) j["co10"] = to_json(*v.co10);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Json to_json(const DescentVerdict& v) {
    Json j;
    j["status"] = descent_status_name(v.status);
    j["final_x"] = v.final_x;
    Json moves = Json::array();
    for (std::size_t n = 0; n < v.moves.size(); ++n) {
        const auto& m = v.moves[n];
        Json mj;
        mj["step"] = n + 1;
        mj["from"] = m.from;
        mj["to"] = m.to;
        mj["potential_before"] = m.potential_before;
        mj["potential_after"] = m.potential_after;
        moves.push_back(std::move(mj));
    }
    j["moves"] = std::move(moves);
    if (v.violation_at >= 0) j["violation_at"] = v.violation_at;
    j["telescoping_ok"] = v.telescoping_ok;
    return j;
}

Json to_json(const GraphDescentVerdict& v) {
    Json j;
    j["status"] = descent_status_name(v.status);
    j["final_pair"] = pair_to_json(v.final_pair);
    Json moves = Json::array();
    for (std::size_t n = 0; n < v.moves.size(); ++n) {
        const auto& m = v.moves[n];
        Json mj;
        mj["step"] = n + 1;
        mj["from"] = pair_to_json(m.from);
        mj["to"] = pair_to_json(m.to);
        mj["value_before"] = m.value_before;
        mj["value_after"] = m.value_after;
        moves.push_back(std::move(mj));
    }
    j["moves"] = std::move(moves);
    if (v.violation_at) j["violation_at"] = pair_to_json(*v.violation_at);
    return j;
}

Json to_json(const InwardCertificate& c) {
    Json j;
    j["x"] = c.x;
    j["t"] = c.t;
    j["verdict"] = inward_verdict_name(c.verdict);
    if (c.beta_fail >= 0) j["beta_fail"] = c.beta_fail;
    j["betas"] = c.betas;
    Json per = Json::array();
    for (const auto& w : c.per_beta) {
        Json wj;
        wj["beta"] = w.beta;
        if (w.s.index >= 0) {
            wj["s"] = w.s.index;
        } else {
            wj["s_coords"] = w.s.coords;
        }
        wj["z"] = w.z;
        wj["dzs"] = w.dzs;
        wj["dxs"] = w.dxs;
        per.push_back(std::move(wj));
    }
    j["per_beta"] = std::move(per);
    return j;
}

Json to_json(const NormedInwardWitness& w) {
    Json j;
    j["member"] = w.member;
    if (w.member) {
        j["lambda"] = w.lambda;
        j["z"] = w.z;
    }
    return j;
}

Json to_json(const Lemma35Result& r) {
    Json j;
    j["z"] = r.z;
    j["beta_used"] = r.beta_used;
    j["inequality_ok"] = r.inequality_ok;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["set_inequality_ok"] = r.set_inequality_ok;
    j["set_lhs"] = r.set_lhs;
    j["set_rhs"] = r.set_rhs;
    return j;
}

Json to_json(const InwardSolveVerdict& v) {
    Json j;
    j["fixed"] = v.fixed;
    j["point"] = v.point;
    j["failed_stage"] = v.failed_stage.empty() ? Json() : Json(v.failed_stage);
    Json moves = Json::array();
    for (const auto& m : v.moves) {
        Json mj;
        mj["from"] = m.from;
        mj["to"] = m.to;
        mj["gap_before"] = m.potential_before;
        mj["gap_after"] = m.potential_after;
        moves.push_back(std::move(mj));
    }
    j["moves"] = std::move(moves);
    j["co2"] = to_json(v.co2_report);
    return j;
}

Json to_json(const MinGapVerdict& v) {
    Json j;
    j["fixed"] = v.fixed;
    j["minimizer"] = v.minimizer;
    j["min_gap"] = v.min_gap;
    j["co21"] = to_json(v.co21);
    return j;
}

Json to_json(const ScanReport& r) {
    Json j;
    j["trials"] = r.trials;
    j["checked"] = r.total_checked();
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
        Json pj;
        pj["checked"] = p.checked;
        Json viols = Json::array();
        for (const auto& v : p.violations) {
            Json vj;
            vj["seed"] = v.trial;
            vj["instance"] = instance_to_json(v.instance);
            vj["hypothesis_report"] = to_json(v.hypothesis_report);
            vj["conclusion_report"] = to_json(v.conclusion_report);
            viols.push_back(std::move(vj));
        }
        pj["violations"] = std::move(viols);
        pairs.push_back(std::move(pj));
    }
    j["pairs"] = std::move(pairs);
    return j;
}

Json to_json(const FoundInstance& f) {
    Json j;
    j["seed"] = f.trial;
    j["instance"] = instance_to_json(f.instance);
    j["holds_report"] = to_json(f.holds_report);
    j["fails_report"] = to_json(f.fails_report);
    return j;
}

std::vector<Json> trace_records(const IterationTrace& t) {
    std::vector<Json> out;
    for (std::size_t n = 0; n < t.points.size(); ++n) {
        Json j;
        j["n"] = n + 1;
        j["x"] = t.points[n];
        j["y"] = n < t.chosen.size() ? Json(t.chosen[n]) : Json();
        j["gap"] = t.gaps[n];
        j["step"] = n < t.steps.size() ? Json(t.steps[n]) : Json();
        out.push_back(std::move(j));
    }
    return out;
}

std::string trace_to_jsonl(const IterationTrace& t) {
    std::string out;
    for (const Json& j : trace_records(t)) {
        out += j.dump();
        out += "\n";
    }
    return out;
}

std::string trace_to_csv(const IterationTrace& t) {
    std::ostringstream os;
    os << "n,x,y,gap,step\n";
    for (const Json& j : trace_records(t)) {
        os << j["n"] << "," << j["x"] << ",";
        if (!j["y"].is_null()) os << j["y"];
        os << "," << j["gap"].dump() << ",";
        if (!j["step"].is_null()) os << j["step"].dump();
        os << "\n";
    }
    return os.str();
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) fail(join(path, key), "missing");
    return *it;
}

}  // namespace

SpacePtr parse_space(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const std::string kind = field(j, "kind", path).get<std::string>();
    const double tolerance = j.value("tolerance", kDefaultTolerance);
    if (kind == "matrix") {
        const Json& dj = field(j, "d", path);
        if (!dj.is_array() || dj.empty()) fail(join(path, "d"), "expected a nonempty array");
        std::vector<std::vector<double>> d;
        for (const auto& row : dj) d.push_back(row.get<std::vector<double>>());
        return std::make_shared<const MetricSpace>(MetricSpace::from_matrix(d, tolerance));
    }
    if (kind == "embedded") {
        const Norm norm = parse_norm(field(j, "norm", path).get<std::string>());
        const double p = j.value("p", 2.0);
        const Json& pj = field(j, "points", path);
        if (!pj.is_array() || pj.empty()) fail(join(path, "points"), "expected a nonempty array");
        std::vector<std::vector<double>> pts;
        for (const auto& row : pj) pts.push_back(row.get<std::vector<double>>());
        return std::make_shared<const MetricSpace>(
            MetricSpace::from_points(pts, norm, p, tolerance));
    }
    fail(join(path, "kind"), "unknown space kind '" + kind + "'");
}

namespace {

MultiMap materialize_rule(const Json& j, SpacePtr space, const PointSet& domain,
                          const std::string& path) {
    const std::string rule = j["rule"].get<std::string>();
    const int n = space->size();
    std::vector<PointSet> values;
    if (rule == "constant") {
        const int target = field(j, "target", path).get<int>();
        if (target < 0 || target >= n) fail(join(path, "target"), "index out of range");
        values.assign(domain.size(), PointSet::single(target, n));
    } else if (rule == "halve") {
        if (!space->is_embedded() || space->dim() != 1) {
            fail(join(path, "rule"), "halve requires a one-dimensional embedded space");
        }
        for (int x : domain) {
            const double target = space->coords(x)[0] / 2.0;
            int pick = -1;
            for (int i = 0; i < n; ++i) {
                if (std::abs(space->coords(i)[0] - target) <= space->tolerance()) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) {
                // snap toward zero: largest grid magnitude not exceeding the target
                double best = -1;
                for (int i = 0; i < n; ++i) {
                    const double c = space->coords(i)[0];
                    if (c * target < 0) continue;
                    if (std::abs(c) <= std::abs(target) + space->tolerance() &&
                        std::abs(c) > best) {
                        best = std::abs(c);
                        pick = i;
                    }
                }
            }
            if (pick < 0) fail(join(path, "rule"), "halve has no grid image for point " +
                                                       std::to_string(x));
            values.push_back(PointSet::single(pick, n));
        }
    } else {
        fail(join(path, "rule"), "unknown rule '" + rule + "'");
    }
    return MultiMap(std::move(space), domain, std::move(values));
}

}  // namespace

MultiMap parse_map(const Json& j, SpacePtr space, const std::string& path) {
    if (!j.is_object()) fail(path.empty() ? "map" : path, "expected an object");
    const int n = space->size();
    PointSet domain = j.contains("domain")
                          ? PointSet(field(j, "domain", path).get<std::vector<int>>(), n)
                          : PointSet::all(n);
    if (j.contains("rule")) return materialize_rule(j, std::move(space), domain, path);

    const Json& vj = field(j, "values", path);
    if (!vj.is_object()) fail(join(path, "values"), "expected an object");
    std::vector<PointSet> values;
    for (int x : domain) {
        const std::string key = std::to_string(x);
        const auto it = vj.find(key);
        if (it == vj.end()) fail(join(path, "values") + "." + key, "missing");
        const std::vector<int> raw = it->get<std::vector<int>>();
        if (raw.empty()) fail(join(path, "values") + "." + key, "empty");
        values.emplace_back(raw, n);
    }
    return MultiMap(std::move(space), std::move(domain), std::move(values));
}

}  // namespace setpoint

#include "setpoint/harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace setpoint {

namespace {

constexpr const char* kSchemaVersion = "1.0.0";

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

double get_number(const Json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number()) fail(path + "." + key, "expected a number");
    return it->get<double>();
}

int get_int(const Json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) fail(path + "." + key, "expected an integer");
    return it->get<int>();
}

std::string get_string(const Json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) fail(path + "." + key, "expected a string");
    return it->get<std::string>();
}

ConditionParams parse_params_fields(const Json& j) {
    ConditionParams p;
    p.alpha = j.value("alpha", 0.0);
    p.epsilon = j.value("epsilon", 0.0);
    p.epsilon1 = j.value("epsilon1", 0.0);
    p.k = j.value("k", 1.0);
    p.beta = j.value("beta", 0.0);
    p.lambda = j.value("lambda", 0.0);
    return p;
}

ConditionSpec parse_condition_spec(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    ConditionSpec spec;
    spec.id = parse_condition(get_string(j, "id", path));
    spec.params = parse_params_fields(j);
    return spec;
}

ScaledMetric parse_delta(const Json& j, const std::string& path) {
    if (j.contains("scale")) return ScaledMetric::scaled(get_number(j, "scale", path));
    if (j.contains("table")) {
        std::vector<std::vector<double>> m;
        for (const auto& row : j["table"]) m.push_back(row.get<std::vector<double>>());
        return ScaledMetric::table(std::move(m));
    }
    fail(path, "expected 'scale' or 'table'");
}

GraphMetric parse_graph_delta(const Json& j, const MultiMap& map, const std::string& path) {
    if (j.contains("outer")) {
        return GraphMetric::max_form(get_number(j, "outer", path),
                                     get_number(j, "t_scale", path));
    }
    if (j.contains("table")) {
        std::vector<std::vector<double>> m;
        for (const auto& row : j["table"]) m.push_back(row.get<std::vector<double>>());
        return GraphMetric::table(graph(map), std::move(m));
    }
    fail(path, "expected 'outer'/'t_scale' or 'table'");
}

Potential parse_phi(const Json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("values")) fail(path, "expected {values, lower_bound}");
    std::map<int, double> values;
    for (const auto& [key, val] : j["values"].items()) {
        values[std::stoi(key)] = val.get<double>();
    }
    return Potential(std::move(values), j.value("lower_bound", 0.0));
}

const MultiMap& require_map(const ProblemFile& problem) {
    if (!problem.map) throw ValidationError("map: required by this task");
    return *problem.map;
}

InstanceGenerator make_generator(const Json& params, std::uint64_t seed) {
    InstanceGenerator::Options opts;
    if (params.contains("generator")) {
        const Json& g = params["generator"];
        opts.min_points = g.value("min_points", 3);
        opts.max_points = g.value("max_points", 12);
        opts.max_value_card = g.value("max_value_card", 3);
        if (g.contains("families")) {
            opts.families = g["families"].get<std::vector<std::string>>();
        }
    }
    return InstanceGenerator(seed, opts);
}

struct TaskOutput {
    Json body;
    std::optional<IterationTrace> trace;
};

TaskOutput run_solve(const ProblemFile& problem) {
    const MultiMap& map = require_map(problem);
    const Json& p = problem.params;
    const std::string method = get_string(p, "method", "params");
    const int x0 = get_int(p, "x0", "params");
    const double alpha = get_number(p, "alpha", "params");
    const int max_iter = p.value("max_iter", 0);

    IterationTrace trace;
    if (method == "co3") {
        trace = iterate_co3(map, x0, alpha, get_number(p, "epsilon", "params"), max_iter);
    } else if (method == "nearest") {
        trace = iterate_nearest(map, x0, alpha, max_iter);
    } else if (method == "co7") {
        trace = iterate_co7(map, x0, alpha, max_iter);
    } else {
        fail("params.method", "unknown method '" + method + "'");
    }
    const LimitVerdict verdict = resolve_limit(map, trace);
    const ConditionReport co6 = check_co6_trace(map, trace);

    TaskOutput out;
    out.body["verdict"] = to_json(verdict);
    if (verdict.fixed) out.body["fixed_point"] = verdict.point;
    out.body["trace"] = to_json(trace);
    out.body["co6"] = to_json(co6);
    out.trace = trace;
    return out;
}

const Json& condition_field(const Json& p) {
    const auto it = p.find("condition");
    if (it == p.end()) fail("params.condition", "missing");
    return *it;
}

TaskOutput run_check(const ProblemFile& problem) {
    const MultiMap& map = require_map(problem);
    const Json& p = problem.params;
    const ConditionSpec spec = parse_condition_spec(condition_field(p), "params.condition");
    ConditionInputs inputs;
    std::optional<Potential> phi;
    std::optional<ScaledMetric> delta;
    std::optional<GraphMetric> graph_delta;
    if (p.contains("phi")) {
        phi = parse_phi(p["phi"], "params.phi");
        inputs.phi = &*phi;
    }
    if (p.contains("delta")) {
        delta = parse_delta(p["delta"], "params.delta");
        inputs.delta = &*delta;
    }
    if (p.contains("graph_delta")) {
        graph_delta = parse_graph_delta(p["graph_delta"], map, "params.graph_delta");
        inputs.graph_delta = &*graph_delta;
    }
    if (p.contains("sequence")) inputs.sequence = p["sequence"].get<std::vector<int>>();
    if (p.contains("chosen")) inputs.chosen = p["chosen"].get<std::vector<int>>();
    inputs.center = p.value("center", -1);

    TaskOutput out;
    out.body["condition_report"] = to_json(check_condition(map, spec.id, spec.params, inputs));
    return out;
}

TaskOutput run_scan(const ProblemFile& problem) {
    const Json& p = problem.params;
    const InstanceGenerator gen = make_generator(p, problem.seed);
    const std::string mode = p.value("mode", "implications");
    TaskOutput out;
    if (mode == "implications") {
        if (!p.contains("pairs") || !p["pairs"].is_array() || p["pairs"].empty()) {
            fail("params.pairs", "expected a nonempty array");
        }
        std::vector<ImplicationPair> pairs;
        for (std::size_t i = 0; i < p["pairs"].size(); ++i) {
            const Json& pj = p["pairs"][i];
            const std::string path = "params.pairs[" + std::to_string(i) + "]";
            ImplicationPair pair;
            pair.hypothesis = parse_condition_spec(pj.contains("hypothesis") ? pj["hypothesis"]
                                                                             : Json(),
                                                   path + ".hypothesis");
            pair.conclusion = parse_condition_spec(pj.contains("conclusion") ? pj["conclusion"]
                                                                             : Json(),
                                                   path + ".conclusion");
            pairs.push_back(std::move(pair));
        }
        const long long trials = p.value("trials", 1000LL);
        out.body["scan"] = to_json(implication_scan(gen, trials, pairs, worker_count()));
    } else if (mode == "counterexample") {
        const ConditionSpec holds = parse_condition_spec(
            p.contains("holds") ? p["holds"] : Json(), "params.holds");
        const ConditionSpec fails = parse_condition_spec(
            p.contains("fails") ? p["fails"] : Json(), "params.fails");
        const long long budget = p.value("budget", 1000LL);
        const auto found = counterexample_search(gen, holds, fails, budget);
        out.body["found"] = found ? to_json(*found) : Json();
    } else {
        fail("params.mode", "unknown scan mode '" + mode + "'");
    }
    return out;
}

TaskOutput run_bead(const ProblemFile& problem) {
    const Json& p = problem.params;
    TaskOutput out;
    out.body["bead_certificate"] = to_json(
        bead_modulus(*problem.space, get_number(p, "r", "params"),
                     get_number(p, "beta", "params"), p.value("budget", 10000LL),
                     problem.seed));
    return out;
}

// Sequences come inline, from a solve report (version-checked) or from a raw
// trace.jsonl emitted by a solve run.
std::vector<int> load_sequence(const Json& p, Json& warnings) {
    if (p.contains("sequence")) return p["sequence"].get<std::vector<int>>();
    if (p.contains("trace_file")) {
        const std::string path = p["trace_file"].get<std::string>();
        std::ifstream in(path);
        if (!in) fail("params.trace_file", "cannot open '" + path + "'");
        std::vector<int> seq;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                const Json rec = Json::parse(line);
                seq.push_back(rec.at("x").get<int>());
            } catch (const std::exception& e) {
                fail("params.trace_file", std::string("bad trace record: ") + e.what());
            }
        }
        if (seq.empty()) fail("params.trace_file", "no trace records");
        return seq;
    }
    if (!p.contains("sequence_from_report")) fail("params.sequence", "missing");
    const std::string path = p["sequence_from_report"].get<std::string>();
    std::ifstream in(path);
    if (!in) fail("params.sequence_from_report", "cannot open '" + path + "'");
    Json loaded;
    try {
        in >> loaded;
    } catch (const std::exception& e) {
        fail("params.sequence_from_report", std::string("unparseable report: ") + e.what());
    }
    if (const auto warn = version_warning(loaded)) {
        warnings.push_back(*warn);
        std::cerr << "warning: " << *warn << "\n";
    }
    if (!loaded.contains("trace") || !loaded["trace"].contains("points")) {
        fail("params.sequence_from_report", "report has no trace.points");
    }
    return loaded["trace"]["points"].get<std::vector<int>>();
}

TaskOutput run_center(const ProblemFile& problem) {
    const Json& p = problem.params;
    const MetricSpace& space = *problem.space;
    const std::string op = get_string(p, "op", "params");
    TaskOutput out;
    Json warnings = Json::array();

    const PointSet pool = p.contains("pool")
                              ? PointSet(p["pool"].get<std::vector<int>>(), space.size())
                              : PointSet::all(space.size());

    if (op == "family") {
        if (!p.contains("family") || !p["family"].is_array() || p["family"].empty()) {
            fail("params.family", "expected a nonempty array of sets");
        }
        std::vector<PointSet> family;
        for (const auto& member : p["family"]) {
            family.emplace_back(member.get<std::vector<int>>(), space.size());
        }
        out.body["center_result"] = to_json(family_center(space, family, pool));
    } else if (op == "asymptotic") {
        const std::vector<int> seq = load_sequence(p, warnings);
        out.body["center_result"] = to_json(asymptotic_center(space, seq, pool));
    } else if (op == "regularity") {
        const std::vector<int> seq = load_sequence(p, warnings);
        out.body["regularity"] = to_json(regularity_check(space, seq, pool,
                                                          p.value("budget", 2000LL),
                                                          problem.seed));
    } else if (op == "regular_subsequence") {
        const std::vector<int> seq = load_sequence(p, warnings);
        out.body["positions"] =
            regular_subsequence(space, seq, pool, p.value("budget", 2000LL), problem.seed);
    } else if (op == "nonexpansive") {
        const MultiMap& map = require_map(problem);
        const NonexpansiveVerdict verdict = nonexpansive_solve(
            map, get_int(p, "x0", "params"), get_number(p, "alpha", "params"));
        out.body["verdict"] = to_json(verdict);
        out.trace = verdict.trace;
    } else {
        fail("params.op", "unknown center op '" + op + "'");
    }
    if (!warnings.empty()) out.body["warnings"] = std::move(warnings);
    return out;
}

TaskOutput run_inward(const ProblemFile& problem) {
    const Json& p = problem.params;
    const std::string op = get_string(p, "op", "params");
    TaskOutput out;
    if (op == "membership") {
        const MultiMap& map = require_map(problem);
        std::vector<double> schedule;
        if (p.contains("schedule")) schedule = p["schedule"].get<std::vector<double>>();
        out.body["certificate"] = to_json(generalized_inward_membership(
            *problem.space, map.domain(), get_int(p, "x", "params"), get_int(p, "t", "params"),
            schedule));
    } else if (op == "membership_normed") {
        const MultiMap& map = require_map(problem);
        out.body["witness"] = to_json(inward_membership_normed(
            *problem.space, map.domain(), get_int(p, "x", "params"),
            p.at("t").get<std::vector<double>>()));
    } else if (op == "solve") {
        const MultiMap& map = require_map(problem);
        const std::string mode = p.value("mode", "generalized");
        out.body["verdict"] = to_json(inward_contraction_solve(
            map, get_int(p, "x0", "params"), get_number(p, "alpha", "params"),
            p.value("epsilon", 0.0),
            mode == "normed_inward" ? InwardMode::normed_inward : InwardMode::generalized));
    } else if (op == "min_gap") {
        out.body["verdict"] = to_json(compact_min_gap(require_map(problem)));
    } else {
        fail("params.op", "unknown inward op '" + op + "'");
    }
    return out;
}

TaskOutput run_descent(const ProblemFile& problem) {
    const MultiMap& map = require_map(problem);
    const Json& p = problem.params;
    const std::string op = get_string(p, "op", "params");
    TaskOutput out;
    if (op == "caristi" || op == "gap") {
        if (!p.contains("delta")) fail("params.delta", "missing");
        const ScaledMetric delta = parse_delta(p["delta"], "params.delta");
        const int x0 = get_int(p, "x0", "params");
        const int max_iter = p.value("max_iter", 0);
        if (op == "caristi") {
            if (!p.contains("phi")) fail("params.phi", "missing");
            const Potential phi = parse_phi(p["phi"], "params.phi");
            out.body["verdict"] = to_json(caristi_descent(map, phi, delta, x0, max_iter));
        } else {
            out.body["verdict"] = to_json(gap_descent(map, delta, x0, max_iter));
        }
    } else if (op == "co16") {
        if (!p.contains("delta")) fail("params.delta", "missing");
        const ScaledMetric delta = parse_delta(p["delta"], "params.delta");
        const auto start = p.at("start").get<std::vector<int>>();
        if (start.size() != 2) fail("params.start", "expected [x, t]");
        out.body["verdict"] = to_json(graph_descent_co16(
            map, delta, get_number(p, "k", "params"), {start[0], start[1]},
            p.value("max_iter", 0)));
    } else if (op == "co20") {
        if (!p.contains("graph_delta")) fail("params.graph_delta", "missing");
        const GraphMetric gd = parse_graph_delta(p["graph_delta"], map, "params.graph_delta");
        const auto start = p.at("start").get<std::vector<int>>();
        if (start.size() != 2) fail("params.start", "expected [x, t]");
        out.body["verdict"] =
            to_json(pair_descent_co20(map, gd, {start[0], start[1]}, p.value("max_iter", 0)));
    } else if (op == "build_co15") {
        const double alpha = get_number(p, "alpha", "params");
        const double eps = get_number(p, "epsilon", "params");
        const ConditionParams co14_params{0, eps, 0, 1, 0, 0};
        const ConditionReport co14 = check_condition(map, ConditionId::co14, co14_params);
        const Co15Build build = build_co15_step(map, alpha, eps, co14);
        out.body["co14"] = to_json(co14);
        out.body["co15"] = to_json(build.report);
        out.body["delta_scale"] = build.delta_scale;
    } else if (op == "build_co18") {
        const double alpha = get_number(p, "alpha", "params");
        const double eps = get_number(p, "epsilon", "params");
        const double eps1 = get_number(p, "epsilon1", "params");
        ConditionParams co17_params;
        co17_params.epsilon = eps;
        co17_params.epsilon1 = eps1;
        const ConditionReport co17 = check_condition(map, ConditionId::co17, co17_params);
        const Co18Build build = build_co18_step(map, alpha, eps, eps1, co17);
        out.body["co17"] = to_json(co17);
        out.body["co18"] = to_json(build.report);
        out.body["delta_scale"] = build.delta_scale;
        out.body["k"] = build.k_value;
    } else {
        fail("params.op", "unknown descent op '" + op + "'");
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

std::string report_schema_version() { return kSchemaVersion; }

std::optional<std::string> version_warning(const Json& loaded_report) {
    if (!loaded_report.is_object() || !loaded_report.contains("schema_version")) {
        return "loaded report carries no schema_version";
    }
    const std::string v = loaded_report["schema_version"].get<std::string>();
    if (v != kSchemaVersion) {
        return "loaded report has schema_version " + v + ", expected " +
               std::string(kSchemaVersion);
    }
    return std::nullopt;
}

int worker_count() {
    const char* env = std::getenv("SETPOINT_WORKERS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

ProblemFile parse_problem(const Json& j) {
    if (!j.is_object()) throw ValidationError("problem: expected a JSON object");
    ProblemFile problem;
    if (!j.contains("space")) throw ValidationError("space: missing");
    problem.space = parse_space(j["space"], "space");
    if (j.contains("map")) {
        problem.map = parse_map(j["map"], problem.space, "");
    }
    if (!j.contains("task") || !j["task"].is_string()) {
        throw ValidationError("task: expected a string");
    }
    problem.task = j["task"].get<std::string>();
    static const char* kTasks[] = {"solve", "check", "scan", "bead",
                                   "center", "inward", "descent"};
    if (std::find(std::begin(kTasks), std::end(kTasks), problem.task) == std::end(kTasks)) {
        throw ValidationError("task: unknown task '" + problem.task + "'");
    }
    problem.params = j.value("params", Json::object());
    problem.seed = j.value("seed", 0ull);
    return problem;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("file: cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError("file: invalid JSON: " + std::string(e.what()));
    }
    return parse_problem(j);
}

Json run_problem(const ProblemFile& problem, const std::string& outdir) {
    TaskOutput out;
    if (problem.task == "solve") out = run_solve(problem);
    else if (problem.task == "check") out = run_check(problem);
    else if (problem.task == "scan") out = run_scan(problem);
    else if (problem.task == "bead") out = run_bead(problem);
    else if (problem.task == "center") out = run_center(problem);
    else if (problem.task == "inward") out = run_inward(problem);
    else if (problem.task == "descent") out = run_descent(problem);
    else throw ValidationError("task: unknown task '" + problem.task + "'");

    Json report;
    report["schema_version"] = kSchemaVersion;
    report["task"] = problem.task;
    report["seed"] = problem.seed;
    report["params"] = problem.params;
    for (auto& [key, value] : out.body.items()) report[key] = value;

    std::filesystem::create_directories(outdir);
    const std::filesystem::path dir(outdir);
    write_text(dir / "report.json", report.dump(2) + "\n");
    if (out.trace) {
        write_text(dir / "trace.jsonl", trace_to_jsonl(*out.trace));
        write_text(dir / "trace.csv", trace_to_csv(*out.trace));
    }
    return report;
}

int run_file(const std::string& path, const std::string& outdir) {
    try {
        const ProblemFile problem = load_problem_file(path);
        run_problem(problem, outdir);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        // mistyped fields are malformed input, not internal failures
        std::cerr << "validation error: params: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

int validate_file(const std::string& path) {
    try {
        const ProblemFile problem = load_problem_file(path);
        (void)problem;
        std::cout << "ok\n";
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace setpoint

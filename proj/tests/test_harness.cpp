#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "setpoint/harness.hpp"

using namespace setpoint;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("setpoint_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter() {
        static int c = 0;
        return ++c;
    }
    std::string file(const std::string& name, const std::string& text) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << text;
        return p.string();
    }
    std::string read(const std::string& name) const {
        std::ifstream in(path / name, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
    }
};

// quarter-collapse grid with the origin at index 0: halving snaps every
// off-grid image down to the next level, so the rule map contracts to 0
Json quarter_space_json() {
    Json points = Json::array();
    points.push_back({0.0});
    for (int k = 8; k >= 0; --k) points.push_back({std::pow(0.25, k)});
    Json space;
    space["kind"] = "embedded";
    space["norm"] = "l2";
    space["points"] = points;
    return space;
}

Json quarter_solve_problem() {
    Json j;
    j["space"] = quarter_space_json();
    j["map"] = {{"rule", "halve"}};
    j["task"] = "solve";
    j["params"] = {{"method", "co3"}, {"x0", 9}, {"alpha", 0.5}, {"epsilon", 0.1}};
    j["seed"] = 7;
    return j;
}

}  // namespace

TEST_CASE("report schema version is constant and embedded") {
    CHECK(report_schema_version() == "1.0.0");
    TempDir dir;
    const ProblemFile problem = parse_problem(quarter_solve_problem());
    const Json report = run_problem(problem, dir.path.string());
    CHECK(report["schema_version"] == "1.0.0");
}

TEST_CASE("halve rule materializes the quarter-collapse instance") {
    const ProblemFile problem = parse_problem(quarter_solve_problem());
    REQUIRE(problem.map.has_value());
    // every half lands off-grid and snaps down one level; the bottom point
    // 4^-8 (index 1) snaps to 0
    CHECK(problem.map->value(9) == PointSet::single(8, 10));
    CHECK(problem.map->value(1) == PointSet::single(0, 10));
    CHECK(problem.map->value(0) == PointSet::single(0, 10));
    CHECK(fixed_points(*problem.map) == std::vector<int>{0});
}

TEST_CASE("solve task writes a report with the fixed point plus trace files") {
    TempDir dir;
    const ProblemFile problem = parse_problem(quarter_solve_problem());
    const Json report = run_problem(problem, dir.path.string());
    CHECK(report["verdict"]["fixed"] == true);
    CHECK(report["fixed_point"] == 0);
    CHECK(fs::exists(dir.path / "trace.jsonl"));
    CHECK(fs::exists(dir.path / "trace.csv"));

    const std::string jsonl = dir.read("trace.jsonl");
    CHECK(jsonl.find("\"gap\"") != std::string::npos);
    const std::string csv = dir.read("trace.csv");
    CHECK(csv.rfind("n,x,y,gap,step", 0) == 0);
}

TEST_CASE("empty value sets are rejected with a field-path diagnostic") {
    Json j;
    j["space"] = {{"kind", "embedded"},
                  {"norm", "l2"},
                  {"points", {{0.0}, {1.0}, {2.0}, {3.0}}}};
    j["map"] = {{"domain", {0, 1, 2, 3}},
                {"values",
                 {{"0", {0}}, {"1", {0}}, {"2", {1}}, {"3", Json::array()}}}};
    j["task"] = "solve";
    try {
        parse_problem(j);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()) == "values.3: empty");
    }
}

TEST_CASE("run_file exit codes") {
    TempDir dir;
    const std::string good = dir.file("good.json", quarter_solve_problem().dump());
    CHECK(run_file(good, (dir.path / "out").string()) == 0);

    const std::string bad = dir.file("bad.json", "{\"task\": \"solve\"}");
    CHECK(run_file(bad, (dir.path / "out2").string()) == 1);

    const std::string garbage = dir.file("garbage.json", "{nope");
    CHECK(run_file(garbage, (dir.path / "out3").string()) == 1);

    // mistyped params are malformed input, not internal errors
    Json mistyped = quarter_solve_problem();
    mistyped["params"]["x0"] = "nine";
    const std::string typed = dir.file("mistyped.json", mistyped.dump());
    CHECK(run_file(typed, (dir.path / "out4").string()) == 1);

    CHECK(validate_file(good) == 0);
    CHECK(validate_file(bad) == 1);
}

TEST_CASE("scan task reports zero violations for the co2 -> co3 pair") {
    TempDir dir;
    Json j;
    j["space"] = {{"kind", "embedded"}, {"norm", "l2"}, {"points", {{0.0}, {1.0}}}};
    j["task"] = "scan";
    j["params"] = {{"mode", "implications"},
                   {"trials", 300},
                   {"pairs",
                    {{{"hypothesis", {{"id", "co2"}, {"alpha", 0.5}}},
                      {"conclusion", {{"id", "co3"}, {"alpha", 0.5}, {"epsilon", 0.1}}}}}}};
    j["seed"] = 11;
    const Json report = run_problem(parse_problem(j), dir.path.string());
    CHECK(report["scan"]["pairs"][0]["checked"].get<long long>() > 0);
    CHECK(report["scan"]["pairs"][0]["violations"].empty());
}

TEST_CASE("repeated runs produce byte-identical artifacts") {
    TempDir dir;
    const ProblemFile problem = parse_problem(quarter_solve_problem());
    run_problem(problem, (dir.path / "a").string());
    run_problem(problem, (dir.path / "b").string());
    CHECK(dir.read("a/report.json") == dir.read("b/report.json"));
    CHECK(dir.read("a/trace.jsonl") == dir.read("b/trace.jsonl"));
    CHECK(dir.read("a/trace.csv") == dir.read("b/trace.csv"));
}

TEST_CASE("center task consumes a solve report and warns on version mismatch") {
    TempDir dir;
    const ProblemFile solve = parse_problem(quarter_solve_problem());
    run_problem(solve, (dir.path / "solve").string());

    Json center;
    center["space"] = quarter_space_json();
    center["task"] = "center";
    center["params"] = {{"op", "asymptotic"},
                        {"sequence_from_report", (dir.path / "solve/report.json").string()}};
    const Json report = run_problem(parse_problem(center), (dir.path / "center").string());
    CHECK(report["center_result"]["radius"].get<double>() == 0.0);
    CHECK(!report.contains("warnings"));

    // the raw trace file works as a sequence source too
    center["params"].erase("sequence_from_report");
    center["params"]["trace_file"] = (dir.path / "solve/trace.jsonl").string();
    const Json from_trace = run_problem(parse_problem(center), (dir.path / "ct").string());
    CHECK(from_trace["center_result"]["radius"].get<double>() == 0.0);
    center["params"].erase("trace_file");

    // age the report and expect a warning
    Json aged;
    {
        std::ifstream in(dir.path / "solve/report.json");
        in >> aged;
    }
    aged["schema_version"] = "0.9.0";
    dir.file("old_report.json", aged.dump(2));
    center["params"]["sequence_from_report"] = (dir.path / "old_report.json").string();
    const Json warned = run_problem(parse_problem(center), (dir.path / "center2").string());
    REQUIRE(warned.contains("warnings"));
    CHECK(warned["warnings"].size() == 1);
}

TEST_CASE("check, bead, inward, descent and counterexample tasks round-trip") {
    TempDir dir;
    Json base;
    base["space"] = {{"kind", "embedded"},
                     {"norm", "l2"},
                     {"points", {{0.0}, {1.0}, {2.0}}}};
    base["map"] = {{"values", {{"0", {0}}, {"1", {0}}, {"2", {0, 2}}}}};

    Json check = base;
    check["task"] = "check";
    check["params"] = {{"condition", {{"id", "co3"}, {"alpha", 0.5}, {"epsilon", 0.1}}}};
    CHECK(run_problem(parse_problem(check), (dir.path / "c").string())
              ["condition_report"]["holds"] == true);

    Json bead;
    bead["space"] = {{"kind", "embedded"},
                     {"norm", "linf"},
                     {"points", {{0.0, 0.0}, {1.0, 0.0}}}};
    bead["task"] = "bead";
    bead["params"] = {{"r", 1.0}, {"beta", 1.0}, {"budget", 2000}};
    const Json bead_report = run_problem(parse_problem(bead), (dir.path / "bd").string());
    CHECK(bead_report["bead_certificate"]["failed"] == true);

    Json inward = base;
    inward["task"] = "inward";
    inward["params"] = {{"op", "min_gap"}};
    CHECK(run_problem(parse_problem(inward), (dir.path / "i").string())
              ["verdict"]["fixed"] == true);

    Json descent = base;
    descent["task"] = "descent";
    descent["params"] = {{"op", "gap"}, {"delta", {{"scale", 0.4}}}, {"x0", 1}};
    CHECK(run_problem(parse_problem(descent), (dir.path / "d").string())
              ["verdict"]["status"] == "fixed_point");

    Json cx;
    cx["space"] = base["space"];
    cx["task"] = "scan";
    cx["params"] = {{"mode", "counterexample"},
                    {"holds", {{"id", "co3"}, {"alpha", 0.5}}},
                    {"fails", {{"id", "co2"}, {"alpha", 0.99}}},
                    {"budget", 1000}};
    cx["seed"] = 3;
    const Json cx_report = run_problem(parse_problem(cx), (dir.path / "cx").string());
    CHECK(!cx_report["found"].is_null());
}

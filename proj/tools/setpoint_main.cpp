#include <CLI11.hpp>

#include "setpoint/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"setpoint: fixed-point laboratory for set-valued mappings on finite spaces"};
    app.set_version_flag("--version", setpoint::report_schema_version());
    app.require_subcommand(1);

    std::string run_file, run_out = ".";
    CLI::App* run = app.add_subcommand("run", "run a problem file and write its report");
    run->add_option("file", run_file, "problem file (JSON)")->required();
    run->add_option("-o,--output", run_out, "output directory");

    std::string scan_file, scan_out = ".";
    CLI::App* scan = app.add_subcommand("scan", "run a scan problem file");
    scan->add_option("file", scan_file, "problem file (JSON), task must be 'scan'")->required();
    scan->add_option("-o,--output", scan_out, "output directory");

    std::string validate_file;
    CLI::App* validate = app.add_subcommand("validate", "validate a problem file");
    validate->add_option("file", validate_file, "problem file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return setpoint::run_file(run_file, run_out);
    if (scan->parsed()) {
        try {
            const setpoint::ProblemFile problem = setpoint::load_problem_file(scan_file);
            if (problem.task != "scan") {
                std::cerr << "validation error: task: scan subcommand requires task 'scan'\n";
                return 1;
            }
            setpoint::run_problem(problem, scan_out);
            return 0;
        } catch (const setpoint::ValidationError& e) {
            std::cerr << "validation error: " << e.what() << "\n";
            return 1;
        } catch (const setpoint::Json::exception& e) {
            std::cerr << "validation error: params: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "internal error: " << e.what() << "\n";
            return 2;
        }
    }
    if (validate->parsed()) return setpoint::validate_file(validate_file);
    return 2;
}

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "render.hpp"
#include "spec_file.hpp"

int main(int argc, char** argv) {
    using namespace aberrant;
    using namespace aberrant::cli;

    CLI::App app{"Evaluate, compare and search two-level regular fractional factorial designs"};
    std::string command;
    std::string spec_path;
    std::string criterion;
    bool json = false;
    CommandOptions options;
    std::uint64_t budget_nodes = 0;
    double budget_seconds = 0;
    int r = 0;

    const std::vector<std::string> commands(std::begin(kCommands), std::end(kCommands));
    const std::vector<std::string> criteria(std::begin(kCriteria), std::end(kCriteria));
    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(commands));
    app.add_option("--spec", spec_path, "Design spec file")->required()->check(CLI::ExistingFile);
    app.add_option("--criterion", criterion, "Aberration criterion")->check(CLI::IsMember(criteria));
    app.add_flag("--json", json, "Print one JSON document instead of tables");
    auto* nodes = app.add_option("--budget-nodes", budget_nodes, "Search node budget")->check(CLI::PositiveNumber);
    auto* seconds = app.add_option("--budget-seconds", budget_seconds, "Search time budget")->check(CLI::PositiveNumber);
    auto* r_opt = app.add_option("--r", r, "Sub-exponent for construct-weak");
    app.add_option("--method", options.method, "Search method")
        ->check(CLI::IsMember({"direct", "complement", "weak"}));
    app.add_option("--extra", options.extra, "Extra fitted columns for --criterion general searches");
    app.add_option("--threads", options.threads, "Search threads")->check(CLI::PositiveNumber);
    app.add_flag("--prune", options.prune, "Skip designs equivalent under basis relabelling");
    app.add_option("--show", options.show, "Optimal designs listed by search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    options.criterion = criterion;
    if (*nodes) options.budget_nodes = budget_nodes;
    if (*seconds) options.budget_seconds = budget_seconds;
    if (*r_opt) options.r = r;

    try {
        const DesignSpecFile spec = read_spec_file(spec_path);
        const Report report = run_command(command, spec, options);
        if (json) {
            std::cout << report.dump(2) << '\n';
        } else {
            std::cout << render_text(report);
        }
        return has_failures(report) ? 4 : 0;
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

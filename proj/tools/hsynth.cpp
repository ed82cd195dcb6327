#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsynth/cli.hpp"

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<double> parse_ladder(const std::string& text) {
    std::vector<double> out;
    for (const auto& s : split(text, ',')) out.push_back(std::stod(s));
    return out;
}

void parse_nodes(const std::string& text, std::optional<hsynth::NodeCount>& antenna, std::optional<hsynth::NodeCount>& control) {
    const auto parts = split(text, ',');
    if (parts.empty() || parts.size() > 2) throw hsynth::InvalidArgument("cli", "--nodes expects <antenna>[,<control>]");
    antenna = hsynth::cli::parse_node_count(parts[0]);
    control = hsynth::cli::parse_node_count(parts.size() == 2 ? parts[1] : parts[0]);
}

int report(const hsynth::cli::Outcome& o) {
    if (!o.message.empty()) std::cerr << o.message << "\n";
    if (o.report) {
        const auto& r = *o.report;
        std::cout << "status: " << r.status << "\n";
        std::cout << "epsilon: " << r.epsilon << "  floor: " << r.epsilon_floor << "  ||v||: " << r.target_norm << "\n";
        if (r.solve)
            std::cout << "discrepancy: " << r.solve->discrepancy << "  energy: " << r.solve->energy
                      << "  alpha*: " << r.solve->alpha_star << "\n";
        if (r.certificate && r.empirical)
            std::cout << "certificate within bounds: " << (hsynth::certificate_holds(*r.certificate, *r.empirical) ? "yes" : "no")
                      << "\n";
    }
    return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal-energy antenna densities for multi-region harmonic field synthesis"};
    app.require_subcommand(1);

    hsynth::cli::RunOptions run;
    std::string run_grid, run_nodes, run_eps;
    auto* run_cmd = app.add_subcommand("run", "Solve a scenario, certify it, and export report and grids");
    run_cmd->add_option("scenario", run.scenario_path, "Scenario file (YAML); '.yaml' may be omitted")->required();
    run_cmd->add_option("--out", run.out_dir, "Output directory")->capture_default_str();
    run_cmd->add_option("--grid", run_grid, "Grid export counts <nx>[,<ny>[,<nz>]]; omitted: no grids");
    run_cmd->add_option("--nodes", run_nodes, "Node counts <antenna>,<control>; N for circles, NPxNA for spheres");
    run_cmd->add_option("--epsilon", run_eps, "Accuracy: a positive value or 'paper' (default: from scenario)");
    run_cmd->add_flag("--dump-operator", run.dump_operator, "Write the operator matrix and spectrum (operator.bin)");
    run_cmd->add_option("--samples", run.samples, "Monte-Carlo points per region for the empirical sup check")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    hsynth::cli::SweepOptions sw;
    std::string eps_ladder, alpha_ladder, sw_nodes;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate discrepancy and energy over an epsilon or alpha ladder");
    sweep_cmd->add_option("scenario", sw.scenario_path, "Scenario file (YAML)")->required();
    sweep_cmd->add_option("--out", sw.out_dir, "Output directory")->capture_default_str();
    auto* eo = sweep_cmd->add_option("--epsilon-ladder", eps_ladder, "Comma-separated epsilon values");
    auto* ao = sweep_cmd->add_option("--alpha-ladder", alpha_ladder, "Comma-separated alpha values");
    eo->excludes(ao);
    sweep_cmd->add_flag("--relative", sw.relative, "Ladder values are multiples of ||v||_Xi (epsilon) or sigma_1^2 (alpha)");
    sweep_cmd->add_option("--nodes", sw_nodes, "Node counts <antenna>,<control>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : hsynth::cli::kUsage;
    }

    try {
        if (*run_cmd) {
            if (!run_grid.empty())
                for (const auto& c : split(run_grid, ',')) run.grid.push_back(std::stoi(c));
            if (!run_nodes.empty()) parse_nodes(run_nodes, run.antenna_nodes, run.control_nodes);
            if (run_eps == "paper") run.epsilon = hsynth::EpsilonSpec::paper();
            else if (!run_eps.empty()) run.epsilon = hsynth::EpsilonSpec::explicit_value(std::stod(run_eps));
            return report(hsynth::cli::run(run));
        }
        if (!eps_ladder.empty()) sw.epsilons = parse_ladder(eps_ladder);
        if (!alpha_ladder.empty()) sw.alphas = parse_ladder(alpha_ladder);
        if (!sw_nodes.empty()) parse_nodes(sw_nodes, sw.antenna_nodes, sw.control_nodes);
        return report(hsynth::cli::sweep(sw));
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return hsynth::cli::kUsage;
    }
}

#ifndef HSYNTH_CLI_HPP
#define HSYNTH_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include "hsynth/geometry.hpp"
#include "hsynth/report.hpp"
#include "hsynth/scenario.hpp"

namespace hsynth::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kValidation = 3,
    kInfeasible = 4,
    kNumerical = 5,
    kIo = 6,
};

struct RunOptions {
    std::string scenario_path;
    std::string out_dir = "hsynth-out";
    std::vector<int> grid;                    // empty: no grid export
    std::optional<NodeCount> antenna_nodes;
    std::optional<NodeCount> control_nodes;
    std::optional<EpsilonSpec> epsilon;
    bool dump_operator = false;
    int samples = 500;
};

struct SweepOptions {
    std::string scenario_path;
    std::string out_dir = "hsynth-out";
    std::vector<double> epsilons;
    std::vector<double> alphas;
    bool relative = false;  // ladder values are multiples of ||v||_Xi (epsilon) or sigma_1^2 (alpha)
    std::optional<NodeCount> antenna_nodes;
    std::optional<NodeCount> control_nodes;
};

struct Outcome {
    int exit_code = kOk;
    std::string message;
    std::optional<RunReport> report;
};

/// Resolves "presets/paper-2d" to "presets/paper-2d.yaml" when the bare path
/// does not exist.
std::string resolve_scenario_path(const std::string& path);

/// "128" (circle) or "24x48" (sphere).
NodeCount parse_node_count(const std::string& text);

/// Full pipeline: parse, validate, assemble, solve, certify, export.
/// Nothing is written when the scenario fails validation.
Outcome run(const RunOptions& opts);

/// Discrepancy/energy table over an epsilon or alpha ladder plus the
/// singular-value spectrum.
Outcome sweep(const SweepOptions& opts);

}  // namespace hsynth::cli

#endif  // HSYNTH_CLI_HPP

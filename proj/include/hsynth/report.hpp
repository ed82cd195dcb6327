#ifndef HSYNTH_REPORT_HPP
#define HSYNTH_REPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsynth/certify.hpp"
#include "hsynth/scenario.hpp"
#include "hsynth/solver.hpp"

namespace hsynth {

struct RunReport {
    Scenario scenario;
    std::string status;  // solved | degenerate | infeasible
    std::string message;
    double epsilon = 0;
    double epsilon_floor = 0;
    double target_norm = 0;
    SpectrumSummary<double> spectrum;
    std::optional<SolveReport<double>> solve;
    std::optional<Certificate> certificate;
    std::optional<EmpiricalSup> empirical;
    int samples = 0;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, double>> timings;  // stage, seconds
};

/// Report body without timings; deterministic for a fixed scenario.
std::string report_body(const RunReport& r);

/// Full document: body followed by the timings section.
std::string report_document(const RunReport& r);

std::string solve_report_yaml(const SolveReport<double>& r);

}  // namespace hsynth

#endif  // HSYNTH_REPORT_HPP

#include "hsynth/report.hpp"

#include <cmath>

#include <yaml-cpp/yaml.h>

#include "hsynth/io.hpp"

namespace hsynth {

namespace {

void emit_solve(YAML::Emitter& out, const SolveReport<double>& r) {
    out << YAML::BeginMap;
    out << YAML::Key << "epsilon" << YAML::Value << r.epsilon;
    out << YAML::Key << "alpha-star" << YAML::Value << r.alpha_star;
    out << YAML::Key << "discrepancy" << YAML::Value << r.discrepancy;
    out << YAML::Key << "relative-discrepancy-error" << YAML::Value
        << (r.degenerate ? 0.0 : std::abs(r.discrepancy - r.epsilon) / r.epsilon);
    out << YAML::Key << "energy" << YAML::Value << r.energy;
    out << YAML::Key << "target-norm" << YAML::Value << r.target_norm;
    out << YAML::Key << "epsilon-floor" << YAML::Value << r.epsilon_floor;
    out << YAML::Key << "stationarity" << YAML::Value << r.stationarity;
    out << YAML::Key << "bracket-iterations" << YAML::Value << r.iterations;
    out << YAML::Key << "degenerate" << YAML::Value << r.degenerate;
    out << YAML::Key << "block-residuals" << YAML::Value << YAML::Flow << r.block_residuals;
    out << YAML::EndMap;
}

void emit_boundary(YAML::Emitter& out, const BoundaryCertificate& b) {
    out << YAML::BeginMap;
    out << YAML::Key << "boundary" << YAML::Value << b.name;
    out << YAML::Key << "residual-l2" << YAML::Value << b.residual_l2;
    out << YAML::Key << "l1-conversion" << YAML::Value << b.conversion;
    out << YAML::Key << "constant-paper" << YAML::Value << b.constant_paper;
    out << YAML::Key << "constant-sharp" << YAML::Value << b.constant_sharp;
    out << YAML::Key << "bound-paper" << YAML::Value << b.bound_paper;
    out << YAML::Key << "bound-sharp" << YAML::Value << b.bound_sharp;
    out << YAML::EndMap;
}

}  // namespace

std::string solve_report_yaml(const SolveReport<double>& r) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    emit_solve(out, r);
    return out.c_str();
}

std::string report_body(const RunReport& r) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "status" << YAML::Value << r.status;
    if (!r.message.empty()) out << YAML::Key << "message" << YAML::Value << r.message;
    out << YAML::Key << "epsilon" << YAML::Value << r.epsilon;
    out << YAML::Key << "epsilon-floor" << YAML::Value << r.epsilon_floor;
    out << YAML::Key << "target-norm" << YAML::Value << r.target_norm;
    out << YAML::Key << "spectrum" << YAML::Value << YAML::BeginMap << YAML::Key << "sigma-1" << YAML::Value << r.spectrum.largest
        << YAML::Key << "sigma-min" << YAML::Value << r.spectrum.smallest << YAML::Key << "count-above-1e-12-sigma-1"
        << YAML::Value << r.spectrum.count_above_cut << YAML::EndMap;
    if (r.solve) {
        out << YAML::Key << "solve" << YAML::Value;
        emit_solve(out, *r.solve);
    }
    if (r.certificate) {
        out << YAML::Key << "certificate" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "regions" << YAML::Value << YAML::BeginSeq;
        for (const auto& b : r.certificate->regions) emit_boundary(out, b);
        out << YAML::EndSeq;
        out << YAML::Key << "exterior" << YAML::Value;
        emit_boundary(out, r.certificate->exterior);
        out << YAML::EndMap;
    }
    if (r.empirical) {
        out << YAML::Key << "empirical-sup" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "samples-per-region" << YAML::Value << r.samples;
        out << YAML::Key << "regions" << YAML::Value << YAML::Flow << r.empirical->regions;
        out << YAML::Key << "exterior" << YAML::Value << r.empirical->exterior;
        if (r.certificate) out << YAML::Key << "within-bounds" << YAML::Value << certificate_holds(*r.certificate, *r.empirical);
        out << YAML::EndMap;
    }
    out << YAML::Key << "outputs" << YAML::Value << r.outputs;
    out << YAML::EndMap;

    std::string doc = std::string(kFormatVersionLine) + "\n";
    doc += "scenario:\n";
    // Indent the scenario echo under its key.
    const std::string scen = scenario_to_yaml(r.scenario);
    std::size_t pos = 0;
    while (pos < scen.size()) {
        const auto nl = scen.find('\n', pos);
        const auto line = scen.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        if (!line.empty()) doc += "  " + line + "\n";
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    doc += out.c_str();
    doc += "\n";
    return doc;
}

std::string report_document(const RunReport& r) {
    YAML::Emitter out;
    out << YAML::BeginMap << YAML::Key << "timings" << YAML::Value << YAML::BeginMap;
    for (const auto& [stage, seconds] : r.timings) out << YAML::Key << stage << YAML::Value << seconds;
    out << YAML::EndMap << YAML::EndMap;
    return report_body(r) + out.c_str() + "\n";
}

}  // namespace hsynth

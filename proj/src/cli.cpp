#include "hsynth/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hsynth/certify.hpp"
#include "hsynth/fields.hpp"
#include "hsynth/io.hpp"
#include "hsynth/problem.hpp"
#include "hsynth/solver.hpp"

namespace hsynth::cli {

namespace fs = std::filesystem;

namespace {

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return std::max(s, 1e-9);
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

Scenario load_with_overrides(const std::string& path, const std::optional<NodeCount>& antenna,
                             const std::optional<NodeCount>& control, const std::optional<EpsilonSpec>& eps) {
    Scenario s = load_scenario(resolve_scenario_path(path));
    if (antenna) s.discretization.antenna = *antenna;
    if (control) s.discretization.control = *control;
    if (eps) s.epsilon = *eps;
    return s;
}

GridSpec box_grid(const PointXd& center, double half_width, const std::vector<int>& counts, int dim) {
    GridSpec g{center.array() - half_width, center.array() + half_width, {}};
    for (int a = 0; a < dim; ++a) g.counts.push_back(counts[std::min<std::size_t>(a, counts.size() - 1)]);
    return g;
}

std::string relative_name(const fs::path& p) { return p.filename().string(); }

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("io", "cannot open '" + path.string() + "' for writing");
    f << text;
}

template <typename F>
Outcome guarded(F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        return {kValidation, std::string("[parse] ") + e.what(), std::nullopt};
    } catch (const ValidationError& e) {
        return {kValidation, std::string("[validate] ") + e.what(), std::nullopt};
    } catch (const InfeasibleError& e) {
        return {kInfeasible, std::string("[solve] ") + e.what(), std::nullopt};
    } catch (const NumericalError& e) {
        return {kNumerical, std::string("[numerics] ") + e.what(), std::nullopt};
    } catch (const InvalidArgument& e) {
        return {kValidation, std::string("[input] ") + e.what(), std::nullopt};
    } catch (const Error& e) {
        return {e.module() == "io" ? kIo : kInternal, std::string("[") + e.module() + "] " + e.what(), std::nullopt};
    } catch (const std::exception& e) {
        return {kInternal, std::string("[internal] ") + e.what(), std::nullopt};
    }
}

}  // namespace

std::string resolve_scenario_path(const std::string& path) {
    if (!fs::exists(path) && fs::exists(path + ".yaml")) return path + ".yaml";
    return path;
}

NodeCount parse_node_count(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) return {std::stoi(text), 0};
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw InvalidArgument("cli", "bad node count '" + text + "' (expected N or NPxNA)");
    }
}

Outcome run(const RunOptions& opts) {
    return guarded([&]() -> Outcome {
        Stopwatch clock;
        RunReport rep;
        rep.scenario = load_with_overrides(opts.scenario_path, opts.antenna_nodes, opts.control_nodes, opts.epsilon);
        const Scenario& s = rep.scenario;
        validate_scenario(s);
        if (auto v = field_domain_violations(s); !v.empty()) throw ValidationError(std::move(v), "fields");
        rep.timings.emplace_back("parse-validate", clock.lap());

        Problem p = build_problem(s);
        rep.timings.emplace_back("assemble-factorize", clock.lap());

        rep.epsilon = resolve_epsilon(s);
        rep.target_norm = xi_norm(p.target);
        rep.epsilon_floor = epsilon_floor(p.op, p.target);
        rep.spectrum = summarize_spectrum(p.op.spectrum(), 1e-12);
        rep.samples = opts.samples;

        fs::create_directories(opts.out_dir);
        const fs::path out(opts.out_dir);
        auto written = [&](const fs::path& path) { rep.outputs.push_back(relative_name(path)); };

        write_spectrum((out / "spectrum.csv").string(), p.op.spectrum());
        written(out / "spectrum.csv");
        if (opts.dump_operator) {
            write_operator_dump((out / "operator.bin").string(), p.op);
            written(out / "operator.bin");
        }

        int code = kOk;
        try {
            auto sol = solve_min_energy(p.op, p.target, rep.epsilon);
            rep.timings.emplace_back("solve", clock.lap());
            rep.status = sol.report.degenerate ? "degenerate" : "solved";
            rep.certificate = certify_solution(p.op, sol.density, p.target, s);
            rep.empirical = sample_sup_mismatch(sol.density, s, opts.samples, s.seed);
            rep.solve = std::move(sol.report);
            rep.timings.emplace_back("certify", clock.lap());

            if (!opts.grid.empty()) {
                const auto domain = eval_on_grid(sol.density, s, box_grid(s.origin(), 1.1 * s.outer_radius, opts.grid, s.dim));
                write_field_grid((out / "grid-domain.csv").string(), domain);
                written(out / "grid-domain.csv");
                for (std::size_t k = 0; k < s.regions.size(); ++k) {
                    const auto& r = s.regions[k];
                    const auto name = "grid-D" + std::to_string(k + 1) + ".csv";
                    write_field_grid((out / name).string(), eval_on_grid(sol.density, s, box_grid(r.center, r.radius, opts.grid, s.dim)));
                    written(out / name);
                }
                rep.timings.emplace_back("grids", clock.lap());
            }
            write_text(out / "density.csv", [&] {
                std::ostringstream os;
                os << kFormatVersionLine << "\n";
                os << (s.dim == 2 ? "x,y" : "x,y,z") << ",weight,density\n" << std::setprecision(17);
                for (Eigen::Index j = 0; j < sol.density.values.size(); ++j) {
                    for (int a = 0; a < s.dim; ++a) os << p.antenna->node(j)(a) << ",";
                    os << p.antenna->weights()(j) << "," << sol.density.values(j) << "\n";
                }
                return os.str();
            }());
            written(out / "density.csv");
        } catch (const InfeasibleError& e) {
            rep.status = "infeasible";
            rep.message = e.what();
            rep.timings.emplace_back("solve", clock.lap());
            code = kInfeasible;
        }

        rep.outputs.push_back("report.yaml");
        write_text(out / "report.yaml", report_document(rep));
        Outcome o{code, rep.status == "infeasible" ? "[solve] " + rep.message : std::string(), std::move(rep)};
        return o;
    });
}

Outcome sweep(const SweepOptions& opts) {
    return guarded([&]() -> Outcome {
        if (opts.epsilons.empty() == opts.alphas.empty())
            return {kUsage, "sweep needs exactly one nonempty ladder (--epsilon-ladder or --alpha-ladder)", std::nullopt};
        const Scenario s = load_with_overrides(opts.scenario_path, opts.antenna_nodes, opts.control_nodes, std::nullopt);
        Problem p = build_problem(s);
        const double vnorm = xi_norm(p.target);
        const double s1 = p.op.spectrum().largest();

        std::vector<TableRow> rows;
        std::string column;
        if (!opts.alphas.empty()) {
            column = "alpha";
            std::vector<double> alphas;
            for (double a : opts.alphas) alphas.push_back(opts.relative ? a * s1 * s1 : a);
            for (const auto& r : sweep_alpha(p.op, p.target, alphas)) rows.push_back({r.alpha, r.discrepancy, r.energy});
        } else {
            column = "epsilon";
            std::vector<double> eps;
            for (double e : opts.epsilons) eps.push_back(opts.relative ? e * vnorm : e);
            std::sort(eps.begin(), eps.end());
            for (double e : eps) {
                const auto sol = solve_min_energy(p.op, p.target, e);
                rows.push_back({e, sol.report.discrepancy, sol.report.energy});
            }
        }
        fs::create_directories(opts.out_dir);
        const fs::path out(opts.out_dir);
        write_table((out / "sweep.csv").string(), column, rows);
        write_spectrum((out / "spectrum.csv").string(), p.op.spectrum());
        return {kOk, "", std::nullopt};
    });
}

}  // namespace hsynth::cli

#include "hsynth/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "hsynth/error.hpp"

namespace hsynth {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void check_counts(const NodeCount& c, int dim, const std::string& what, std::vector<std::string>& out) {
    if (dim == 2 && c.primary < 4) out.push_back(what + ": circle node count must be >= 4");
    if (dim == 3 && (c.primary < 2 || c.azimuth < 4))
        out.push_back(what + ": sphere node counts must be >= 2 (polar) and >= 4 (azimuth)");
}

}  // namespace

double default_control_radius(const PointXd& center, double radius, double delta, double outer_radius) {
    const double dist = center.norm();
    const double room = std::min({0.5 * radius, 0.25 * (dist - radius - delta), 0.5 * (outer_radius - dist - radius)});
    return radius + room;
}

double default_outer_control_radius(const std::vector<Region>& regions, double outer_radius) {
    double reach = 0;
    for (const auto& r : regions) reach = std::max(reach, r.center.norm() + r.control_radius);
    return 0.5 * (outer_radius + reach);
}

Discretization default_discretization(int dim) {
    if (dim == 3) return {{24, 48}, {24, 48}};
    return {{128, 0}, {128, 0}};
}

const Scenario& validate_scenario(const Scenario& s) {
    std::vector<std::string> v;
    if (s.dim != 2 && s.dim != 3) {
        v.push_back("dim must be 2 or 3 (got " + std::to_string(s.dim) + ")");
        throw ValidationError(std::move(v));
    }
    if (!(s.delta > 0)) v.push_back("antenna radius delta > 0 fails");
    if (s.regions.empty()) v.push_back("at least one region of interest is required");
    if (!(s.outer_control_radius < s.outer_radius))
        v.push_back("R' < R fails (R' = " + num(s.outer_control_radius) + ", R = " + num(s.outer_radius) + ")");

    for (std::size_t k = 0; k < s.regions.size(); ++k) {
        const auto& r = s.regions[k];
        const std::string tag = "region " + std::to_string(k + 1) + ": ";
        if (r.center.size() != s.dim) {
            v.push_back(tag + "center dimension differs from scenario dim");
            continue;
        }
        if (r.field.dim() != s.dim) v.push_back(tag + "target field dimension differs from scenario dim");
        const double dist = r.center.norm();
        if (!(r.radius > 0)) v.push_back(tag + "a_k > 0 fails");
        if (!(r.radius < r.control_radius))
            v.push_back(tag + "a_k < a'_k fails (a = " + num(r.radius) + ", a' = " + num(r.control_radius) + ")");
        if (!(dist > r.control_radius + s.delta))
            v.push_back(tag + "|x_k| > a'_k + delta fails (|x_k| = " + num(dist) +
                        ", a'_k + delta = " + num(r.control_radius + s.delta) + ")");
        if (!(s.outer_control_radius > dist + r.control_radius))
            v.push_back(tag + "R' > |x_k| + a'_k fails (R' = " + num(s.outer_control_radius) +
                        ", |x_k| + a'_k = " + num(dist + r.control_radius) + ")");
        if (!(dist > r.radius + s.delta)) v.push_back(tag + "closed region intersects the closed antenna ball");
        for (std::size_t j = 0; j < k; ++j) {
            const auto& q = s.regions[j];
            if (q.center.size() != s.dim) continue;
            if (!((r.center - q.center).norm() > r.radius + q.radius))
                v.push_back(tag + "closure intersects region " + std::to_string(j + 1));
        }
    }
    if (s.exterior_field.dim() != s.dim) v.push_back("exterior field dimension differs from scenario dim");
    if (s.epsilon.kind == EpsilonSpec::Kind::value && !(s.epsilon.value > 0)) v.push_back("epsilon > 0 fails");
    check_counts(s.discretization.antenna, s.dim, "antenna discretization", v);
    check_counts(s.discretization.control, s.dim, "control discretization", v);

    if (!v.empty()) throw ValidationError(std::move(v));
    return s;
}

namespace {

Scenario finish_paper_scenario(Scenario s) {
    for (auto& r : s.regions) r.control_radius = default_control_radius(r.center, r.radius, s.delta, s.outer_radius);
    s.outer_control_radius = default_outer_control_radius(s.regions, s.outer_radius);
    s.discretization = default_discretization(s.dim);
    s.epsilon = EpsilonSpec::paper();
    return s;
}

}  // namespace

Scenario paper_2d_scenario() {
    Scenario s;
    s.dim = 2;
    s.delta = 1;
    s.outer_radius = 15;
    s.exterior_field = HarmonicField<double>::zero(2);
    s.regions.push_back({make_point({0, 12}), 2, 0, HarmonicField<double>::log_source(make_point({0, 0}))});
    s.regions.push_back(
        {make_point({10, 0}), 2, 0, HarmonicField<double>::dipole(make_point({0, 0}), make_point({1, 0}))});
    return finish_paper_scenario(std::move(s));
}

Scenario paper_3d_scenario() {
    Scenario s;
    s.dim = 3;
    s.delta = 1;
    s.outer_radius = 15;
    s.exterior_field = HarmonicField<double>::zero(3);
    s.regions.push_back({make_point({10, 0, 0}), 2, 0, HarmonicField<double>::point_source(make_point({0, 0, 0}))});
    return finish_paper_scenario(std::move(s));
}

QuadratureRule<double> antenna_rule(const Scenario& s) {
    return make_rule<double>(s.origin(), s.delta, s.discretization.antenna);
}

std::vector<QuadratureRule<double>> control_rules(const Scenario& s) {
    std::vector<QuadratureRule<double>> rules;
    rules.reserve(s.regions.size() + 1);
    for (const auto& r : s.regions) rules.push_back(make_rule<double>(r.center, r.control_radius, s.discretization.control));
    rules.push_back(make_rule<double>(s.origin(), s.outer_control_radius, s.discretization.control));
    return rules;
}

}  // namespace hsynth

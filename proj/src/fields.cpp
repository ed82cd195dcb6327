#include "hsynth/fields.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace hsynth {

std::vector<std::string> field_domain_violations(const Scenario& s) {
    std::vector<std::string> v;
    const auto& u0 = s.exterior_field;
    const auto u0_sing = u0.singular_point();
    for (std::size_t k = 0; k < s.regions.size(); ++k) {
        const auto& r = s.regions[k];
        const std::string tag = "region " + std::to_string(k + 1) + ": ";
        if (auto p = r.field.singular_point(); p && !((*p - r.center).norm() > r.control_radius))
            v.push_back(tag + "u_k is singular inside the closed control ball");
        if (u0_sing && !((*u0_sing - r.center).norm() > r.control_radius))
            v.push_back(tag + "u_0 is singular inside the closed control ball");
    }
    if (u0_sing && !(u0_sing->norm() < s.outer_control_radius))
        v.push_back("u_0 must be singular only inside B_{R'}(0)");
    if (!u0.admissible_at_infinity())
        v.push_back(s.dim == 2 ? "u_0 must stay bounded at infinity in 2D" : "u_0 must decay at infinity in 3D");
    return v;
}

ControlTrace<double> build_target(const Scenario& s, std::shared_ptr<const ControlLayout<double>> layout) {
    if (layout->block_count() != s.regions.size() + 1)
        throw DimensionMismatch("fields", "control layout needs one block per region plus the outer boundary");
    if (auto v = field_domain_violations(s); !v.empty()) throw ValidationError(std::move(v), "fields");

    ControlTrace<double> t = ControlTrace<double>::zero(layout);
    for (std::size_t k = 0; k < s.regions.size(); ++k) {
        const auto& uk = s.regions[k].field;
        const auto& rule = layout->rules()[k];
        auto block = t.block(k);
        if (uk.is_zero() && s.exterior_field.is_zero()) continue;
        for (Eigen::Index i = 0; i < rule.size(); ++i)
            block(i) = eval_field(uk, rule.node(i)) - eval_field(s.exterior_field, rule.node(i));
    }
    return t;
}

double volume_l2_norm(const HarmonicField<double>& f, const PointXd& center, double radius, int radial_nodes) {
    const auto [x, w] = gauss_legendre<double>(radial_nodes);
    double sum = 0;
    for (int i = 0; i < radial_nodes; ++i) {
        const double rho = 0.5 * radius * (x(i) + 1.0);
        const auto shell = center.size() == 2 ? make_circle_rule<double>(center, rho, 128)
                                              : make_sphere_rule<double>(center, rho, 24, 48);
        sum += 0.5 * radius * w(i) * shell.integrate_fn([&](const auto& y) {
            const double u = eval_field(f, y);
            return u * u;
        });
    }
    return std::sqrt(sum);
}

double surface_l2_norm(const HarmonicField<double>& f, const PointXd& center, double radius) {
    const auto rule = center.size() == 2 ? make_circle_rule<double>(center, radius, 256)
                                         : make_sphere_rule<double>(center, radius, 32, 64);
    return std::sqrt(rule.integrate_fn([&](const auto& y) {
        const double u = eval_field(f, y);
        return u * u;
    }));
}

double paper_epsilon(const Scenario& s) {
    double total = 0;
    for (const auto& r : s.regions) total += volume_l2_norm(r.field, r.center, r.radius);
    total += surface_l2_norm(s.exterior_field, s.origin(), s.outer_radius);
    return 1e-3 * total;
}

double resolve_epsilon(const Scenario& s) {
    return s.epsilon.kind == EpsilonSpec::Kind::value ? s.epsilon.value : paper_epsilon(s);
}

std::string GridLabel::name() const {
    switch (kind) {
        case Kind::region: return "D" + std::to_string(region);
        case Kind::annulus: return "annulus";
        case Kind::exterior: return "exterior";
        case Kind::excluded: return "excluded";
        case Kind::error: return "error";
    }
    return "unknown";
}

FieldGrid eval_on_points(const Density<double>& g, const Scenario& s, const PointSet<double>& points) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    const Eigen::Index n = points.cols();
    FieldGrid grid{points, VectorXd::Constant(n, nan), VectorXd::Constant(n, nan), VectorXd::Constant(n, nan),
                   std::vector<GridLabel>(n)};

    const auto& antenna = g.rule->boundary();
    const int ring_nodes = s.dim == 2 ? static_cast<int>(g.rule->size()) : s.discretization.antenna.azimuth;
    const double excluded_radius = antenna.radius * (1.0 + 2.0 * pi_v<double> / std::max(ring_nodes, 1));

    for (Eigen::Index i = 0; i < n; ++i) {
        const auto x = points.col(i);
        auto& label = grid.labels[i];
        const double r = (x - antenna.center).norm();
        if (r < excluded_radius) {
            label.kind = GridLabel::Kind::excluded;
            continue;
        }
        label.kind = r >= s.outer_radius ? GridLabel::Kind::exterior : GridLabel::Kind::annulus;
        for (std::size_t k = 0; k < s.regions.size(); ++k) {
            if ((x - s.regions[k].center).norm() <= s.regions[k].radius) {
                label = {GridLabel::Kind::region, static_cast<int>(k + 1)};
                break;
            }
        }
        try {
            grid.total(i) = eval_field(s.exterior_field, x) + eval_double_layer(g, x);
            if (label.kind == GridLabel::Kind::region)
                grid.target(i) = eval_field(s.regions[label.region - 1].field, x);
            else if (label.kind == GridLabel::Kind::exterior)
                grid.target(i) = eval_field(s.exterior_field, x);
        } catch (const InvalidArgument&) {
            label = {GridLabel::Kind::error, 0};
            grid.total(i) = grid.target(i) = nan;
        }
    }

    std::map<std::string, double> scale;
    for (Eigen::Index i = 0; i < n; ++i)
        if (!std::isnan(grid.target(i))) {
            auto& m = scale[grid.labels[i].name()];
            m = std::max(m, std::abs(grid.target(i)));
        }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::isnan(grid.target(i))) continue;
        const double group_max = scale[grid.labels[i].name()];
        const double floor = group_max > 0 ? 1e-8 * group_max : 1.0;
        const double denom = group_max > 0 ? std::max(std::abs(grid.target(i)), floor) : 1.0;
        grid.mismatch(i) = std::abs(grid.total(i) - grid.target(i)) / denom;
    }
    return grid;
}

FieldGrid eval_on_grid(const Density<double>& g, const Scenario& s, const GridSpec& spec) {
    const int dim = s.dim;
    if (spec.lower.size() != dim || spec.upper.size() != dim || static_cast<int>(spec.counts.size()) != dim)
        throw InvalidArgument("fields", "grid spec dimension differs from scenario dim");
    Eigen::Index n = 1;
    for (int c : spec.counts) {
        if (c < 0) throw InvalidArgument("fields", "negative grid count");
        n *= c;
    }
    PointSet<double> points(dim, n);
    std::vector<int> idx(dim, 0);
    for (Eigen::Index p = 0; p < n; ++p) {
        for (int a = 0; a < dim; ++a) {
            const int c = spec.counts[a];
            const double t = c > 1 ? double(idx[a]) / double(c - 1) : 0.5;
            points(a, p) = spec.lower(a) + t * (spec.upper(a) - spec.lower(a));
        }
        for (int a = 0; a < dim; ++a) {
            if (++idx[a] < spec.counts[a]) break;
            idx[a] = 0;
        }
    }
    return eval_on_points(g, s, points);
}

}  // namespace hsynth

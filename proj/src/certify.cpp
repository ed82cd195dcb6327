#include "hsynth/certify.hpp"

#include <algorithm>
#include <random>

#include "hsynth/fields.hpp"

namespace hsynth {

namespace {

BoundaryCertificate make_entry(std::string name, double residual, double conversion, double c_paper, double c_sharp) {
    BoundaryCertificate b;
    b.name = std::move(name);
    b.residual_l2 = residual;
    b.conversion = conversion;
    b.constant_paper = c_paper;
    b.constant_sharp = c_sharp;
    b.bound_paper = c_paper * conversion * residual;
    b.bound_sharp = c_sharp * conversion * residual;
    return b;
}

PointXd random_direction(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n01;
    PointXd d(dim);
    do {
        for (int i = 0; i < dim; ++i) d(i) = n01(rng);
    } while (d.norm() < 1e-12);
    return d.normalized();
}

}  // namespace

Certificate certify_solution(const ForwardOperator<double>& K, const Density<double>& h, const ControlTrace<double>& v,
                             const Scenario& s) {
    if (K.layout()->block_count() != s.regions.size() + 1)
        throw DimensionMismatch("certify", "operator blocks differ from scenario regions");
    auto r = apply(K, h);
    r.values -= v.values;

    Certificate c;
    for (std::size_t k = 0; k < s.regions.size(); ++k) {
        const auto& reg = s.regions[k];
        c.regions.push_back(make_entry("D" + std::to_string(k + 1), block_norm(r, k), l1_conversion(reg.control_radius, s.dim),
                                       interior_constant(reg.radius, reg.control_radius, s.dim, ConstantForm::paper),
                                       interior_constant(reg.radius, reg.control_radius, s.dim, ConstantForm::sharp)));
    }
    const double rp = s.outer_control_radius;
    c.exterior = make_entry("exterior", block_norm(r, s.regions.size()), l1_conversion(rp, s.dim),
                            exterior_constant(rp, s.outer_radius, s.dim, ConstantForm::paper),
                            exterior_constant(rp, s.outer_radius, s.dim, ConstantForm::sharp));
    return c;
}

EmpiricalSup sample_sup_mismatch(const Density<double>& h, const Scenario& s, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    EmpiricalSup out;
    for (const auto& reg : s.regions) {
        double sup = 0;
        for (int i = 0; i < n; ++i) {
            const double rho = i % 2 == 0 ? reg.radius : reg.radius * std::pow(u01(rng), 1.0 / s.dim);
            const PointXd x = reg.center + rho * random_direction(s.dim, rng);
            const double mismatch = eval_double_layer(h, x) - (eval_field(reg.field, x) - eval_field(s.exterior_field, x));
            sup = std::max(sup, std::abs(mismatch));
        }
        out.regions.push_back(sup);
    }
    for (int i = 0; i < n; ++i) {
        const double rho = i % 2 == 0 ? s.outer_radius : s.outer_radius * (1.0 + 2.0 * u01(rng));
        const PointXd x = rho * random_direction(s.dim, rng);
        out.exterior = std::max(out.exterior, std::abs(eval_double_layer(h, x)));
    }
    return out;
}

bool certificate_holds(const Certificate& c, const EmpiricalSup& e) {
    if (c.regions.size() != e.regions.size()) return false;
    for (std::size_t k = 0; k < c.regions.size(); ++k)
        if (e.regions[k] > c.regions[k].bound_paper) return false;
    return e.exterior <= c.exterior.bound_paper;
}

}  // namespace hsynth

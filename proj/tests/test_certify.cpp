#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hsynth/hsynth.hpp"
#include "test_support.hpp"

using namespace hsynth;
using doctest::Approx;

namespace {
constexpr double kPi = pi_v<double>;

VectorXd smooth_random_density(const QuadratureRule<double>& rule, std::mt19937_64& rng) {
    // Low-order random harmonic-like content on the antenna.
    std::normal_distribution<double> n;
    const double a = n(rng), b = n(rng), c = n(rng), d = n(rng), e = n(rng);
    VectorXd v(rule.size());
    for (Eigen::Index j = 0; j < rule.size(); ++j) {
        const auto y = rule.node(j);
        v(j) = a * y(0) + b * y(1) + c * y(0) * y(1) + d * (y(0) * y(0) - y(1) * y(1)) + e * (rule.dim() == 3 ? y(2) : 1.0);
    }
    return v;
}
}  // namespace

TEST_CASE("sup-norm bound constants") {
    CHECK(interior_constant(2.0, 2.5, 2) == Approx(1.14592).epsilon(1e-5));
    CHECK(interior_constant(2.0, 2.5, 2) == Approx(4.5 / (kPi * 2.5 * 0.5)).epsilon(1e-15));
    CHECK(interior_constant(2.0, 3.0, 3) == Approx(0.397887).epsilon(1e-5));
    CHECK(exterior_constant(13.0, 15.0, 2) == Approx(28.0 / (kPi * 13 * 2)).epsilon(1e-15));
    CHECK(exterior_constant(13.0, 15.0, 2) == Approx(0.3428).epsilon(1e-4));
    CHECK(interior_bound(0.0, 2.0, 2.5, 2) == 0);
    CHECK(exterior_bound(0.0, 13.0, 15.0, 3) == 0);
    CHECK(interior_bound(0.7, 2.0, 2.5, 2) == Approx(interior_constant(2.0, 2.5, 2) * std::sqrt(5 * kPi) * 0.7).epsilon(1e-15));
    CHECK(l1_conversion(2.5, 2) == Approx(std::sqrt(5 * kPi)).epsilon(1e-15));
    CHECK(l1_conversion(3.0, 3) == Approx(std::sqrt(36 * kPi)).epsilon(1e-15));
}

TEST_CASE("paper form dominates the sharp form") {
    for (int dim : {2, 3}) {
        const double ratio = interior_constant(1.0, 1.5, dim, ConstantForm::paper) / interior_constant(1.0, 1.5, dim, ConstantForm::sharp);
        CHECK(ratio == Approx(double(dim)).epsilon(1e-14));
        CHECK(exterior_bound(1.0, 10.0, 12.0, dim, ConstantForm::paper) >= exterior_bound(1.0, 10.0, 12.0, dim, ConstantForm::sharp));
    }
}

TEST_CASE("bounds are homogeneous in the mismatch") {
    for (double m : {1e-9, 0.3, 1.0, 17.5}) {
        CHECK(interior_bound(2 * m, 2.0, 2.5, 2) == 2 * interior_bound(m, 2.0, 2.5, 2));
        CHECK(exterior_bound(2 * m, 13.0, 15.0, 3) == 2 * exterior_bound(m, 13.0, 15.0, 3));
    }
}

TEST_CASE("interior bound blows up as a' approaches a") {
    for (int dim : {2, 3}) {
        double prev = 0;
        for (double gap = 1.0; gap > 1e-6; gap *= 0.5) {
            const double b = interior_bound(1.0, 2.0, 2.0 + gap, dim);
            CHECK(b > prev);
            prev = b;
        }
        CHECK(prev > 1e5);
    }
}

TEST_CASE("exterior bound falls as the gap widens") {
    const double narrow = exterior_bound(1.0, 12.0, 13.0, 3);
    const double wide = exterior_bound(1.0, 11.0, 13.0, 3);
    CHECK(wide < narrow);
    double prev = std::numeric_limits<double>::infinity();
    for (double rp = 12.9; rp > 6; rp -= 0.5) {
        const double b = exterior_bound(1.0, rp, 13.0, 2);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("invalid radii") {
    CHECK_THROWS_AS(interior_bound(1.0, 2.0, 2.0, 2), InvalidArgument);
    CHECK_THROWS_AS(interior_bound(1.0, 3.0, 2.0, 3), InvalidArgument);
    CHECK_THROWS_AS(exterior_bound(1.0, 15.0, 15.0, 2), InvalidArgument);
    CHECK_THROWS_AS(exterior_bound(1.0, 16.0, 15.0, 3), InvalidArgument);
    CHECK_THROWS_AS(interior_bound(-1.0, 2.0, 3.0, 3), InvalidArgument);
}

TEST_CASE("exact data gives vanishing bounds") {
    const auto s = paper_2d_scenario();
    const auto p = build_problem(s);
    std::mt19937_64 rng(1);
    const Density<double> h(p.antenna, smooth_random_density(*p.antenna, rng));
    const auto v = apply(p.op, h);
    const auto c = certify_solution(p.op, h, v, s);
    const double scale = std::max(1.0, xi_norm(v));
    REQUIRE(c.regions.size() == 2);
    for (const auto& b : c.regions) {
        CHECK(b.bound_paper <= 1e-9 * scale);
        CHECK(b.bound_sharp <= b.bound_paper);
    }
    CHECK(c.exterior.bound_paper <= 1e-9 * scale);
    CHECK(c.regions[0].name == "D1");
    CHECK(c.exterior.name == "exterior");
}

TEST_CASE("2D preset certificate is finite and consistent") {
    const auto s = paper_2d_scenario();
    const auto p = build_problem(s);
    const auto sol = solve_min_energy(p.op, p.target, 0.7 * xi_norm(p.target));
    const auto c = certify_solution(p.op, sol.density, p.target, s);
    for (std::size_t k = 0; k < c.regions.size(); ++k) {
        const auto& b = c.regions[k];
        CHECK(std::isfinite(b.bound_paper));
        CHECK(b.bound_paper >= b.bound_sharp);
        CHECK(b.bound_sharp >= 0);
        CHECK(b.residual_l2 == Approx(sol.report.block_residuals[k]).epsilon(1e-14));
        CHECK(b.bound_paper == Approx(b.constant_paper * b.conversion * b.residual_l2).epsilon(1e-15));
    }
}

TEST_CASE("empirical sup never exceeds the conservative bound") {
    SUBCASE("2D preset, solves and random densities") {
        const auto s = paper_2d_scenario();
        const auto p = build_problem(s);
        const double vn = xi_norm(p.target);
        std::mt19937_64 rng(2);
        for (int i = 0; i < 20; ++i) {
            Density<double> h = i < 10 ? solve_min_energy(p.op, p.target, (0.6 + 0.035 * i) * vn).density
                                       : Density<double>(p.antenna, smooth_random_density(*p.antenna, rng));
            const auto c = certify_solution(p.op, h, p.target, s);
            const auto e = sample_sup_mismatch(h, s, 500, 100 + i);
            CHECK(certificate_holds(c, e));
            for (std::size_t k = 0; k < e.regions.size(); ++k) CHECK(e.regions[k] <= c.regions[k].bound_paper);
            CHECK(e.exterior <= c.exterior.bound_paper);
        }
    }
    SUBCASE("3D preset at reduced resolution") {
        auto s = paper_3d_scenario();
        s.discretization = {{12, 24}, {16, 32}};
        const auto p = build_problem(s);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 5; ++i) {
            const Density<double> h(p.antenna, smooth_random_density(*p.antenna, rng));
            const auto c = certify_solution(p.op, h, p.target, s);
            const auto e = sample_sup_mismatch(h, s, 500, 200 + i);
            CHECK(certificate_holds(c, e));
        }
    }
}

TEST_CASE("sampler is deterministic per seed") {
    const auto s = paper_2d_scenario();
    const auto rule = std::make_shared<const QuadratureRule<double>>(antenna_rule(s));
    std::mt19937_64 rng(4);
    const Density<double> h(rule, smooth_random_density(*rule, rng));
    const auto a = sample_sup_mismatch(h, s, 100, 9);
    const auto b = sample_sup_mismatch(h, s, 100, 9);
    CHECK(a.regions == b.regions);
    CHECK(a.exterior == b.exterior);
    Certificate tight;
    tight.regions.resize(2);
    CHECK_FALSE(certificate_holds(tight, a));
}

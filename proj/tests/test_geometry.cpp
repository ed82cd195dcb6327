#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hsynth/geometry.hpp"
#include "hsynth/scenario.hpp"

using namespace hsynth;
using doctest::Approx;

namespace {
constexpr double kPi = pi_v<double>;

bool rejected(const Scenario& s, const std::string& needle) {
    try {
        validate_scenario(s);
    } catch (const ValidationError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}
}  // namespace

TEST_CASE("circle rule with four nodes") {
    const auto r = make_circle_rule<double>(make_point({0, 0}), 1.0, 4);
    const double expected[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(r.node(j)(0) - expected[j][0]) < 1e-15);
        CHECK(std::abs(r.node(j)(1) - expected[j][1]) < 1e-15);
        CHECK(r.weights()(j) == Approx(kPi / 2));
        CHECK((r.normal(j) - r.node(j)).norm() < 1e-15);
    }
}

TEST_CASE("circle rule invariants") {
    for (int n : {4, 7, 64, 128}) {
        for (double radius : {0.3, 1.0, 14.75}) {
            const PointXd c = make_point({2.5, -1.0});
            const auto r = make_circle_rule<double>(c, radius, n);
            CHECK(std::abs(r.weights().sum() - 2 * kPi * radius) <= 1e-12 * 2 * kPi * radius);
            for (Eigen::Index j = 0; j < r.size(); ++j) {
                CHECK(std::abs((r.node(j) - c).norm() - radius) <= 1e-14 * radius * 4);
                CHECK((r.normal(j) - (r.node(j) - c) / radius).norm() == 0.0);
            }
        }
    }
}

TEST_CASE("trapezoid rule integrates trigonometric modes below n exactly") {
    const auto r = make_circle_rule<double>(make_point({0, 0}), 1.0, 64);
    const double integral = r.integrate_fn([](const auto& y) { return std::cos(3 * std::atan2(y(1), y(0))); });
    CHECK(std::abs(integral) < 1e-13);

    for (int n : {8, 33, 64}) {
        const auto rule = make_circle_rule<double>(make_point({1, 2}), 2.0, n);
        for (int k = 1; k < n; ++k) {
            const auto theta = [&](const auto& y) { return std::atan2(y(1) - 2, y(0) - 1); };
            const double c = rule.integrate_fn([&](const auto& y) { return std::cos(k * theta(y)); });
            const double s = rule.integrate_fn([&](const auto& y) { return std::sin(k * theta(y)); });
            CHECK(std::abs(c) < 1e-12);
            CHECK(std::abs(s) < 1e-12);
        }
    }
}

TEST_CASE("circle rule argument checks") {
    CHECK_THROWS_AS(make_circle_rule<double>(make_point({0, 0}), 1.0, 3), InvalidArgument);
    CHECK_THROWS_AS(make_circle_rule<double>(make_point({0, 0}), 0.0, 16), InvalidArgument);
    CHECK_THROWS_AS(make_circle_rule<double>(make_point({0, 0}), -1.0, 16), InvalidArgument);
    CHECK_THROWS_AS(make_circle_rule<double>(make_point({0, 0, 0}), 1.0, 16), InvalidArgument);
}

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
    for (int n : {2, 5, 16, 24}) {
        const auto [x, w] = gauss_legendre<double>(n);
        CHECK(w.sum() == Approx(2.0).epsilon(1e-14));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double q = 0;
            for (int i = 0; i < n; ++i) q += w(i) * std::pow(x(i), p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            CHECK(std::abs(q - exact) < 1e-13);
        }
    }
}

TEST_CASE("sphere rule weights and symmetry") {
    const auto r = make_sphere_rule<double>(make_point({0, 0, 0}), 2.0, 8, 16);
    CHECK(std::abs(r.weights().sum() - 16 * kPi) <= 1e-12 * 16 * kPi);
    CHECK(r.integrate_fn([](const auto&) { return 1.0; }) == Approx(16 * kPi).epsilon(1e-13));
    CHECK(std::abs(r.integrate_fn([](const auto& y) { return y(2) / 2.0; })) < 1e-13);
    CHECK((r.weights().array() > 0).all());
    for (Eigen::Index j = 0; j < r.size(); ++j) {
        CHECK(std::abs(r.node(j).norm() - 2.0) <= 1e-14 * 2 * 4);
        CHECK(std::abs(r.normal(j).norm() - 1.0) < 1e-15);
    }

    CHECK_THROWS_AS(make_sphere_rule<double>(make_point({0, 0, 0}), 1.0, 1, 16), InvalidArgument);
    CHECK_THROWS_AS(make_sphere_rule<double>(make_point({0, 0, 0}), 1.0, 8, 3), InvalidArgument);
    CHECK_THROWS_AS(make_sphere_rule<double>(make_point({0, 0, 0}), 0.0, 8, 16), InvalidArgument);
}

TEST_CASE("refinement convergence of smooth integrands") {
    const auto f2 = [](const auto& y) { return std::exp(0.7 * y(0) - 0.2 * y(1)) * std::cos(y(1)); };
    const auto c2 = make_point({0.5, 0.25});
    const double coarse2 = make_circle_rule<double>(c2, 1.5, 64).integrate_fn(f2);
    const double fine2 = make_circle_rule<double>(c2, 1.5, 128).integrate_fn(f2);
    CHECK(std::abs(coarse2 - fine2) < 1e-10);

    const auto f3 = [](const auto& y) { return std::exp(0.5 * y(0)) * std::sin(y(1) + 0.3 * y(2)); };
    const auto c3 = make_point({0.0, 0.1, -0.2});
    const double coarse3 = make_sphere_rule<double>(c3, 1.2, 16, 32).integrate_fn(f3);
    const double fine3 = make_sphere_rule<double>(c3, 1.2, 32, 64).integrate_fn(f3);
    CHECK(std::abs(coarse3 - fine3) < 1e-10);
}

TEST_CASE("long double rules share the construction") {
    const auto r = make_sphere_rule<long double>(Point<long double>::Zero(3), 1.0L, 12, 24);
    CHECK(std::abs(static_cast<double>(r.weights().sum() - 4 * pi_v<long double>)) < 1e-15);
}

TEST_CASE("default radii for the experiment presets") {
    const auto s2 = paper_2d_scenario();
    CHECK(s2.regions[0].control_radius == Approx(2.5));
    CHECK(s2.regions[1].control_radius == Approx(3.0));
    CHECK(s2.outer_control_radius == Approx(14.75));
    CHECK_NOTHROW(validate_scenario(s2));

    const auto s3 = paper_3d_scenario();
    CHECK(s3.regions[0].control_radius == Approx(3.0));
    CHECK(s3.outer_control_radius == Approx(14.0));
    CHECK(s3.discretization.antenna.total(3) == 24 * 48);
    CHECK_NOTHROW(validate_scenario(s3));
}

TEST_CASE("validate_scenario rejects direct inequality violations") {
    Scenario s = paper_2d_scenario();
    s.regions.resize(1);
    s.regions[0].center = make_point({2, 0});
    s.regions[0].radius = 1.0;
    s.regions[0].control_radius = 1.5;
    CHECK(rejected(s, "region 1: |x_k| > a'_k + delta fails"));

    Scenario t = paper_2d_scenario();
    t.outer_control_radius = 16;
    t.outer_radius = 15;
    CHECK(rejected(t, "R' < R fails"));
}

TEST_CASE("validate_scenario reports all violations together") {
    Scenario s = paper_2d_scenario();
    s.outer_control_radius = 16;
    s.regions[1].control_radius = 1.0;
    try {
        validate_scenario(s);
        FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.violations().size() >= 2);
        CHECK(std::string(e.what()).find("region 2: a_k < a'_k fails") != std::string::npos);
        CHECK(std::string(e.what()).find("R' < R fails") != std::string::npos);
    }
}

TEST_CASE("every single-inequality perturbation of the presets is rejected") {
    for (const auto& base : {paper_2d_scenario(), paper_3d_scenario()}) {
        CHECK_NOTHROW(validate_scenario(base));
        for (std::size_t k = 0; k < base.regions.size(); ++k) {
            const std::string tag = "region " + std::to_string(k + 1) + ": ";
            Scenario a = base;  // a < a'
            a.regions[k].control_radius = a.regions[k].radius;
            CHECK(rejected(a, tag + "a_k < a'_k fails"));

            Scenario b = base;  // |x| > a' + delta
            b.delta = b.regions[k].center.norm() - b.regions[k].control_radius;
            CHECK(rejected(b, tag + "|x_k| > a'_k + delta fails"));

            Scenario c = base;  // R' > |x| + a'
            c.regions[k].control_radius = c.outer_control_radius - c.regions[k].center.norm();
            CHECK(rejected(c, tag + "R' > |x_k| + a'_k fails"));
        }
        Scenario d = base;  // R' < R
        d.outer_radius = d.outer_control_radius;
        CHECK(rejected(d, "R' < R fails"));
    }
}

TEST_CASE("overlapping regions and bad counts are rejected") {
    Scenario s = paper_2d_scenario();
    s.regions[1].center = make_point({0, 9.5});
    s.regions[1].control_radius = 2.2;
    CHECK(rejected(s, "region 2: closure intersects region 1"));

    Scenario c = paper_2d_scenario();
    c.discretization.antenna.primary = 3;
    CHECK(rejected(c, "antenna discretization"));

    Scenario d = paper_2d_scenario();
    d.dim = 4;
    CHECK(rejected(d, "dim must be 2 or 3"));
}

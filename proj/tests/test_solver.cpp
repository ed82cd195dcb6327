#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hsynth/hsynth.hpp"
#include "test_support.hpp"

using namespace hsynth;
using doctest::Approx;

namespace {

VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    VectorXd v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

// rows x cols matrix with singular values 10^(-k/2).
MatrixXd graded_matrix(int rows, int cols, std::mt19937_64& rng) {
    MatrixXd a(rows, cols), b(cols, cols);
    for (auto& x : a.reshaped()) x = std::normal_distribution<double>()(rng);
    for (auto& x : b.reshaped()) x = std::normal_distribution<double>()(rng);
    const MatrixXd qa = Eigen::HouseholderQR<MatrixXd>(a).householderQ() * MatrixXd::Identity(rows, cols);
    const MatrixXd qb = Eigen::HouseholderQR<MatrixXd>(b).householderQ();
    VectorXd s(cols);
    for (int k = 0; k < cols; ++k) s(k) = std::pow(10.0, -0.5 * k);
    return qa * s.asDiagonal() * qb.transpose();
}

// Dense solve of (alpha I + K*K) h = K* v with K* = W_delta^{-1} K^T W_Xi.
VectorXd dense_tikhonov(const ForwardOperator<double>& K, const VectorXd& v, double alpha) {
    const MatrixXd kstar = K.col_weights().cwiseInverse().asDiagonal() * K.matrix().transpose() * K.row_weights().asDiagonal();
    const MatrixXd lhs = alpha * MatrixXd::Identity(K.cols(), K.cols()) + kstar * K.matrix();
    return lhs.partialPivLu().solve(kstar * v);
}

double s1sq(const ForwardOperator<double>& K) { return K.spectrum().largest() * K.spectrum().largest(); }

}  // namespace

TEST_CASE("tikhonov on a zero target") {
    auto K = testing::small_operator(48, 32);
    const auto zero = ControlTrace<double>::zero(K.layout());
    for (double a : {1e-10, 1e-3, 1.0, 1e6}) {
        CHECK(tikhonov_solve(K, zero, a * s1sq(K)).values.isZero(0));
        CHECK(discrepancy(K, zero, a * s1sq(K)) == 0);
    }
}

TEST_CASE("large alpha collapses the solution") {
    auto K = testing::small_operator(48, 32);
    std::mt19937_64 rng(1);
    const ControlTrace<double> v(K.layout(), random_vector(K.rows(), rng));
    const double s1 = K.spectrum().largest();
    const auto h = tikhonov_solve(K, v, 1e12 * s1 * s1);
    CHECK(l2_norm(h) <= 1e-10 * xi_norm(v) / s1);
    CHECK(discrepancy(K, v, 1e12 * s1 * s1) == Approx(xi_norm(v)).epsilon(1e-8));
}

TEST_CASE("tikhonov agrees with a dense linear solve") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        MatrixXd m(10, 6);
        for (auto& x : m.reshaped()) x = std::normal_distribution<double>()(rng);
        auto K = testing::matrix_operator(m, 5, 5);
        const VectorXd v = random_vector(10, rng);
        for (double a : {1e-4, 1e-1, 10.0}) {
            const VectorXd want = dense_tikhonov(K, v, a);
            const VectorXd got = tikhonov_solve(K, ControlTrace<double>(K.layout(), v), a).values;
            CHECK((got - want).norm() <= 1e-10 * std::max(1.0, want.norm()));
        }
    }
}

TEST_CASE("discrepancy is nondecreasing in alpha") {
    auto K = testing::small_operator(64, 48);
    std::mt19937_64 rng(3);
    const ControlTrace<double> v(K.layout(), random_vector(K.rows(), rng));
    double prev = 0;
    for (int e = -12; e <= 2; ++e) {
        for (int sub = 0; sub < 4; ++sub) {
            const double d = discrepancy(K, v, std::pow(10.0, e + 0.25 * sub) * s1sq(K));
            CHECK(d >= prev * (1 - 1e-12));
            prev = d;
        }
    }
    CHECK(prev <= xi_norm(v));
}

TEST_CASE("degenerate epsilon returns the zero density") {
    auto K = testing::small_operator(48, 32);
    std::mt19937_64 rng(4);
    const ControlTrace<double> v(K.layout(), random_vector(K.rows(), rng));
    const auto sol = solve_min_energy(K, v, 2 * xi_norm(v));
    CHECK(sol.report.degenerate);
    CHECK(sol.density.values.isZero(0));
    CHECK(sol.report.discrepancy == Approx(xi_norm(v)).epsilon(1e-14));
    CHECK(std::isinf(sol.report.alpha_star));
    CHECK(sol.report.energy == 0);
}

TEST_CASE("2D preset epsilon sits below the discretization floor") {
    const auto s = paper_2d_scenario();
    const auto p = build_problem(s);
    const double eps = resolve_epsilon(s);
    const double floor = epsilon_floor(p.op, p.target);
    MESSAGE("normalized epsilon " << eps << ", floor " << floor << ", ||v|| " << xi_norm(p.target));
    CHECK(floor > eps);
    CHECK_THROWS_AS(solve_min_energy(p.op, p.target, eps), InfeasibleError);
    try {
        solve_min_energy(p.op, p.target, eps);
    } catch (const InfeasibleError& e) {
        CHECK(e.floor() == Approx(floor));
        CHECK(std::string(e.module()) == "solver");
    }
    // Just above the floor the solve converges.
    const auto sol = solve_min_energy(p.op, p.target, 1.05 * floor);
    CHECK(std::abs(sol.report.discrepancy - 1.05 * floor) <= 1e-3 * 1.05 * floor);
    CHECK(sol.report.alpha_star > 0);
    CHECK(std::isfinite(sol.report.energy));
    CHECK(sol.report.block_residuals.size() == 3);
}

TEST_CASE("Morozov solves: residual, stationarity, energy ladder") {
    auto K = testing::small_operator(64, 48);
    std::mt19937_64 rng(5);
    const ControlTrace<double> v(K.layout(), random_vector(K.rows(), rng));
    const double vn = xi_norm(v);
    const double floor = epsilon_floor(K, v);
    REQUIRE(floor < 0.9 * vn);
    double prev_energy = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 5; ++i) {
        const double eps = floor + (0.1 + 0.2 * i) * (vn - floor);
        const auto sol = solve_min_energy(K, v, eps);
        const auto& r = sol.report;
        CHECK_FALSE(r.degenerate);
        CHECK(std::abs(r.discrepancy - eps) <= 1e-3 * eps);
        CHECK(r.stationarity <= 1e-8);
        CHECK(r.energy <= prev_energy);
        CHECK(r.epsilon_floor == floor);
        CHECK(r.target_norm == Approx(vn).epsilon(1e-14));
        CHECK(r.iterations > 0);
        CHECK(r.iterations <= 200);
        double sum = 0;
        for (double b : r.block_residuals) sum += b * b;
        CHECK(std::sqrt(sum) == Approx(r.discrepancy).epsilon(1e-12));
        prev_energy = r.energy;
    }
    // Halving epsilon never lowers the energy; a target in the range of K
    // keeps the floor out of the way.
    const auto w = apply(K, Density<double>(K.antenna(), random_vector(K.cols(), rng)));
    for (double e = 0.8 * xi_norm(w); e > 1e-3 * xi_norm(w); e *= 0.5)
        CHECK(solve_min_energy(K, w, 0.5 * e).report.energy >= solve_min_energy(K, w, e).report.energy);
}

TEST_CASE("minimal energy matches a brute-force Lagrange scan") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 8; ++trial) {
        const int cols = 6 + trial % 7;  // up to 12 unknowns
        auto K = testing::matrix_operator(graded_matrix(20, cols, rng), 10, 10);
        const VectorXd v = random_vector(20, rng);
        const ControlTrace<double> t(K.layout(), v);
        const double floor = epsilon_floor(K, t);
        const double eps = floor + 0.3 * (xi_norm(t) - floor);

        const auto sol = solve_min_energy(K, t, eps);
        const double at_achieved = testing::lagrange_scan_min_energy(K.matrix(), K.row_weights(), K.col_weights(), v, sol.report.discrepancy);
        CHECK(sol.report.energy == Approx(at_achieved).epsilon(1e-6));

        SolveOptions tight;
        tight.tolerance = 1e-12;
        const auto sharp = solve_min_energy(K, t, eps, tight);
        const double at_eps = testing::lagrange_scan_min_energy(K.matrix(), K.row_weights(), K.col_weights(), v, eps);
        CHECK(sharp.report.energy == Approx(at_eps).epsilon(1e-6));
    }
}

TEST_CASE("alpha sweep table") {
    auto K = testing::small_operator(64, 48);
    std::mt19937_64 rng(7);
    const ControlTrace<double> v(K.layout(), random_vector(K.rows(), rng));
    std::vector<double> alphas;
    for (int e = 2; e >= -12; --e) alphas.push_back(std::pow(10.0, e) * s1sq(K));
    const auto rows = sweep_alpha(K, v, alphas);
    REQUIRE(rows.size() == alphas.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].alpha > rows[i - 1].alpha);
        CHECK(rows[i].energy <= rows[i - 1].energy * (1 + 1e-12));
        CHECK(rows[i].discrepancy >= rows[i - 1].discrepancy * (1 - 1e-12));
    }
    const double a = 1e-3 * s1sq(K);
    const auto one = sweep_alpha(K, v, {a});
    const auto h = tikhonov_solve(K, v, a);
    CHECK(one[0].energy == l2_norm(h));
    CHECK(one[0].discrepancy == discrepancy(K, v, a));
}

TEST_CASE("solver errors") {
    auto K = testing::small_operator(32, 16);
    std::mt19937_64 rng(8);
    const ControlTrace<double> v(K.layout(), random_vector(K.rows(), rng));
    CHECK_THROWS_AS(tikhonov_solve(K, v, 0.0), InvalidArgument);
    CHECK_THROWS_AS(tikhonov_solve(K, v, -1.0), InvalidArgument);
    CHECK_THROWS_AS(sweep_alpha(K, v, {1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(solve_min_energy(K, v, 0.0), InvalidArgument);
    CHECK_THROWS_AS(solve_min_energy(K, v, epsilon_floor(K, v)), InfeasibleError);
    auto other = testing::small_operator(32, 20);
    CHECK_THROWS_AS(tikhonov_solve(K, ControlTrace<double>::zero(other.layout()), 1.0), DimensionMismatch);
}

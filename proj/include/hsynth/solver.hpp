#ifndef HSYNTH_SOLVER_HPP
#define HSYNTH_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hsynth/error.hpp"
#include "hsynth/operator.hpp"

namespace hsynth {

struct SolveOptions {
    double tolerance = 1e-3;        // relative discrepancy tolerance
    int max_iterations = 200;       // bisection steps on log10(alpha)
    double truncation = 1e-12;      // sigma_i < truncation * sigma_1 is dropped
    double alpha_lower = 1e-14;     // bracket, in units of sigma_1^2
    double alpha_upper = 1e4;
};

template <typename Scalar = double>
struct SpectrumSummary {
    Scalar largest = 0;
    Scalar smallest = 0;
    Eigen::Index count_above_cut = 0;
};

template <typename Scalar = double>
struct SolveReport {
    Scalar epsilon = 0;
    Scalar alpha_star = 0;
    Scalar discrepancy = 0;      // ||K h - v||_Xi, evaluated directly
    Scalar energy = 0;           // ||h||_L2
    Scalar target_norm = 0;      // ||v||_Xi
    Scalar epsilon_floor = 0;
    Scalar stationarity = 0;     // ||alpha h + K*(K h - v)|| / ||K* v||
    int iterations = 0;
    bool degenerate = false;
    SpectrumSummary<Scalar> spectrum;
    std::vector<Scalar> block_residuals;  // per control boundary, L2
};

template <typename Scalar = double>
struct MinEnergySolution {
    Density<Scalar> density;
    SolveReport<Scalar> report;
};

template <typename Scalar = double>
struct SweepRow {
    Scalar alpha;
    Scalar discrepancy;
    Scalar energy;
};

namespace detail {

// Target expressed in the weighted singular basis. Filter factors act on
// beta; the out-of-range part of v contributes a constant to the residual.
template <typename Scalar>
struct SpectralTarget {
    Vector<Scalar> sigma;
    Vector<Scalar> beta;
    Scalar out_of_range_sq;
    Scalar target_norm;

    SpectralTarget(const ForwardOperator<Scalar>& K, const ControlTrace<Scalar>& v, Scalar truncation) {
        if (v.values.size() != K.rows()) throw DimensionMismatch("solver", "target size differs from operator rows");
        const auto& svd = K.spectrum();
        const Eigen::Index r = svd.numerical_rank(truncation);
        const Vector<Scalar> vw = K.row_weights().cwiseSqrt().cwiseProduct(v.values);
        sigma = svd.singular_values.head(r);
        beta = svd.u.leftCols(r).transpose() * vw;
        out_of_range_sq = (vw - svd.u.leftCols(r) * beta).squaredNorm();
        target_norm = vw.norm();
    }

    Scalar discrepancy(Scalar alpha) const {
        using std::sqrt;
        const Vector<Scalar> f = (alpha / (alpha + sigma.array().square())).matrix();
        return sqrt(f.cwiseProduct(beta).squaredNorm() + out_of_range_sq);
    }

    Vector<Scalar> coefficients(Scalar alpha) const {
        return (sigma.array() * beta.array() / (alpha + sigma.array().square())).matrix();
    }
};

template <typename Scalar>
Density<Scalar> density_from_coefficients(const ForwardOperator<Scalar>& K, const Vector<Scalar>& c) {
    Vector<Scalar> hw = K.spectrum().v.leftCols(c.size()) * c;
    hw.array() /= K.col_weights().array().sqrt();
    return Density<Scalar>(K.antenna(), std::move(hw));
}

template <typename Scalar>
void check_alpha(Scalar alpha) {
    if (!(alpha > Scalar(0))) throw InvalidArgument("solver", "regularization strength must be positive");
}

}  // namespace detail

/// Solution of alpha h + K*K h = K*v in the weighted singular basis.
template <typename Scalar>
Density<Scalar> tikhonov_solve(const ForwardOperator<Scalar>& K, const ControlTrace<Scalar>& v, Scalar alpha,
                               const SolveOptions& opts = {}) {
    detail::check_alpha(alpha);
    const detail::SpectralTarget<Scalar> st(K, v, Scalar(opts.truncation));
    return detail::density_from_coefficients(K, st.coefficients(alpha));
}

/// Xi-norm residual ||K h_alpha - v||.
template <typename Scalar>
Scalar discrepancy(const ForwardOperator<Scalar>& K, const ControlTrace<Scalar>& v, Scalar alpha,
                   const SolveOptions& opts = {}) {
    const auto h = tikhonov_solve(K, v, alpha, opts);
    auto r = apply(K, h);
    r.values -= v.values;
    return xi_norm(r);
}

/// Residual reachable as alpha -> 0 with the spectrum truncated at
/// opts.truncation * sigma_1: no smaller epsilon is attainable at this
/// resolution.
template <typename Scalar>
Scalar epsilon_floor(const ForwardOperator<Scalar>& K, const ControlTrace<Scalar>& v, const SolveOptions& opts = {}) {
    const detail::SpectralTarget<Scalar> st(K, v, Scalar(opts.truncation));
    const Scalar s1 = K.spectrum().largest();
    return st.discrepancy(Scalar(opts.alpha_lower) * s1 * s1);
}

template <typename Scalar>
SpectrumSummary<Scalar> summarize_spectrum(const WeightedSvd<Scalar>& svd, Scalar truncation) {
    SpectrumSummary<Scalar> s;
    s.largest = svd.largest();
    s.smallest = svd.singular_values.size() ? svd.singular_values(svd.singular_values.size() - 1) : Scalar(0);
    s.count_above_cut = svd.numerical_rank(truncation);
    return s;
}

/// Minimal-L2 density whose residual matches epsilon (Morozov), found by
/// bisection on log10(alpha).
///
/// epsilon >= ||v||_Xi returns the zero density flagged degenerate;
/// epsilon <= epsilon_floor throws InfeasibleError.
template <typename Scalar>
MinEnergySolution<Scalar> solve_min_energy(const ForwardOperator<Scalar>& K, const ControlTrace<Scalar>& v, Scalar epsilon,
                                           const SolveOptions& opts = {}) {
    using std::log10;
    using std::pow;
    if (!(epsilon > Scalar(0))) throw InvalidArgument("solver", "epsilon must be positive");
    const detail::SpectralTarget<Scalar> st(K, v, Scalar(opts.truncation));
    const Scalar s1 = K.spectrum().largest();

    SolveReport<Scalar> rep;
    rep.epsilon = epsilon;
    rep.target_norm = st.target_norm;
    rep.spectrum = summarize_spectrum(K.spectrum(), Scalar(opts.truncation));
    rep.epsilon_floor = st.discrepancy(Scalar(opts.alpha_lower) * s1 * s1);

    auto finish = [&](Density<Scalar> h, Scalar alpha) {
        rep.alpha_star = alpha;
        rep.energy = l2_norm(h);
        auto r = apply(K, h);
        r.values -= v.values;
        rep.discrepancy = xi_norm(r);
        for (std::size_t k = 0; k < r.layout->block_count(); ++k) rep.block_residuals.push_back(block_norm(r, k));
        const auto ktv = apply_adjoint(K, v);
        const Scalar ktv_norm = l2_norm(ktv);
        if (std::isfinite(double(alpha)) && ktv_norm > Scalar(0)) {
            auto g = apply_adjoint(K, r);
            g.values += alpha * h.values;
            rep.stationarity = l2_norm(g) / ktv_norm;
        }
        return MinEnergySolution<Scalar>{std::move(h), std::move(rep)};
    };

    if (epsilon >= st.target_norm) {
        rep.degenerate = true;
        return finish(Density<Scalar>::zero(K.antenna()), std::numeric_limits<Scalar>::infinity());
    }
    if (epsilon <= rep.epsilon_floor)
        throw InfeasibleError(double(epsilon), double(rep.epsilon_floor),
                              "epsilon " + std::to_string(double(epsilon)) + " is at or below the discretization floor " +
                                  std::to_string(double(rep.epsilon_floor)) + "; refine the discretization or raise epsilon");

    Scalar lo = log10(Scalar(opts.alpha_lower) * s1 * s1);
    Scalar hi = log10(Scalar(opts.alpha_upper) * s1 * s1);
    for (int extend = 0; st.discrepancy(pow(Scalar(10), hi)) < epsilon; ++extend) {
        if (extend == 40) throw NumericalError("solver", "could not bracket the discrepancy");
        hi += Scalar(1);
    }

    const Scalar tol = Scalar(opts.tolerance) * epsilon;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const Scalar mid = Scalar(0.5) * (lo + hi);
        const Scalar d = st.discrepancy(pow(Scalar(10), mid));
        if (std::abs(d - epsilon) <= tol) {
            rep.iterations = it;
            const Scalar alpha = pow(Scalar(10), mid);
            return finish(detail::density_from_coefficients(K, st.coefficients(alpha)), alpha);
        }
        (d < epsilon ? lo : hi) = mid;
    }
    throw NumericalError("solver", "bisection on alpha did not reach the discrepancy tolerance");
}

/// (alpha, discrepancy, energy) per alpha, sorted by alpha.
template <typename Scalar>
std::vector<SweepRow<Scalar>> sweep_alpha(const ForwardOperator<Scalar>& K, const ControlTrace<Scalar>& v,
                                          std::vector<Scalar> alphas, const SolveOptions& opts = {}) {
    std::sort(alphas.begin(), alphas.end());
    std::vector<SweepRow<Scalar>> rows;
    rows.reserve(alphas.size());
    for (Scalar a : alphas) {
        const auto h = tikhonov_solve(K, v, a, opts);
        auto r = apply(K, h);
        r.values -= v.values;
        rows.push_back({a, xi_norm(r), l2_norm(h)});
    }
    return rows;
}

}  // namespace hsynth

#endif  // HSYNTH_SOLVER_HPP

#ifndef HSYNTH_KERNELS_HPP
#define HSYNTH_KERNELS_HPP

#include <algorithm>
#include <cmath>

#include "hsynth/error.hpp"
#include "hsynth/geometry.hpp"
#include "hsynth/types.hpp"

namespace hsynth {

namespace detail {

// |x - y|, rejecting near-coincident pairs: all boundaries in scope are
// strictly separated, so a near-singular evaluation is a caller bug.
template <typename Scalar, typename DX, typename DY>
Scalar checked_distance_sq(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
    using std::sqrt;
    if (x.size() != y.size() || (x.size() != 2 && x.size() != 3))
        throw InvalidArgument("kernels", "points must share dimension 2 or 3");
    const Scalar r2 = (x - y).squaredNorm();
    const Scalar guard = Scalar(1e-12) * std::max(Scalar(1), Scalar(x.norm()));
    if (!(r2 >= guard * guard)) throw InvalidArgument("kernels", "coincident evaluation and source points");
    return r2;
}

template <typename Scalar>
Scalar pow_dim(Scalar r2, int dim) {
    using std::sqrt;
    return dim == 2 ? r2 : r2 * sqrt(r2);
}

}  // namespace detail

/// Laplace fundamental solution: ln(1/|x-y|)/(2 pi) in 2D, 1/(4 pi |x-y|) in 3D.
template <typename DX, typename DY>
typename DX::Scalar phi(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
    using Scalar = typename DX::Scalar;
    using std::log;
    using std::sqrt;
    const Scalar r2 = detail::checked_distance_sq<Scalar>(x, y);
    if (x.size() == 2) return -log(r2) / (Scalar(4) * pi_v<Scalar>);
    return Scalar(1) / (Scalar(4) * pi_v<Scalar> * sqrt(r2));
}

/// Double-layer kernel d Phi(x, y) / d nu_y = (x - y).nu_y / (omega_d |x - y|^d).
template <typename DX, typename DY, typename DN>
typename DX::Scalar dlp_kernel(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                               const Eigen::MatrixBase<DN>& nu_y) {
    using Scalar = typename DX::Scalar;
    const Scalar r2 = detail::checked_distance_sq<Scalar>(x, y);
    const int dim = static_cast<int>(x.size());
    return (x - y).dot(nu_y) / (unit_sphere_measure<Scalar>(dim) * detail::pow_dim(r2, dim));
}

/// Adjoint kernel d Phi(x, y) / d nu_x = (y - x).nu_x / (omega_d |x - y|^d).
template <typename DX, typename DN, typename DY>
typename DX::Scalar adjoint_kernel(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DN>& nu_x,
                                   const Eigen::MatrixBase<DY>& y) {
    using Scalar = typename DX::Scalar;
    const Scalar r2 = detail::checked_distance_sq<Scalar>(x, y);
    const int dim = static_cast<int>(x.size());
    return (y - x).dot(nu_x) / (unit_sphere_measure<Scalar>(dim) * detail::pow_dim(r2, dim));
}

enum class Side { interior, exterior };

/// Harmonic extension of Dirichlet data off a circle or sphere via the
/// Poisson formula, integrated with the data's quadrature rule.
///
/// The exterior solution is the one bounded at infinity in 2D and decaying in
/// 3D. Points on the boundary, or on the wrong side of it, are rejected.
template <typename Scalar, typename DD, typename DX>
Scalar poisson_solve(const QuadratureRule<Scalar>& rule, const Eigen::MatrixBase<DD>& data,
                     const Eigen::MatrixBase<DX>& x, Side side) {
    const auto& b = rule.boundary();
    if (data.size() != rule.size()) throw DimensionMismatch("kernels", "Dirichlet data size differs from rule size");
    if (x.size() != b.dim()) throw InvalidArgument("kernels", "evaluation point dimension mismatch");

    const Scalar rx2 = (x - b.center).squaredNorm();
    const Scalar r2 = b.radius * b.radius;
    const Scalar gap = rx2 - r2;
    if (std::abs(gap) <= Scalar(1e-12) * r2) throw InvalidArgument("kernels", "Poisson evaluation on the boundary");
    if (side == Side::interior && gap > 0) throw InvalidArgument("kernels", "interior Poisson evaluation outside the ball");
    if (side == Side::exterior && gap < 0) throw InvalidArgument("kernels", "exterior Poisson evaluation inside the ball");

    const int dim = b.dim();
    const Scalar scale = (side == Side::interior ? -gap : gap) / (unit_sphere_measure<Scalar>(dim) * b.radius);
    Scalar sum(0);
    for (Eigen::Index j = 0; j < rule.size(); ++j) {
        const Scalar d2 = (x - rule.node(j)).squaredNorm();
        sum += rule.weights()(j) * Scalar(data(j)) / detail::pow_dim(d2, dim);
    }
    return scale * sum;
}

}  // namespace hsynth

#endif  // HSYNTH_KERNELS_HPP

#ifndef HSYNTH_GEOMETRY_HPP
#define HSYNTH_GEOMETRY_HPP

#include <cmath>
#include <utility>

#include "hsynth/error.hpp"
#include "hsynth/types.hpp"

namespace hsynth {

/// Circle (dim 2) or sphere (dim 3) of positive radius.
template <typename Scalar = double>
struct Boundary {
    Point<Scalar> center;
    Scalar radius;

    Boundary(Point<Scalar> c, Scalar r) : center(std::move(c)), radius(r) {
        if (center.size() != 2 && center.size() != 3)
            throw InvalidArgument("geometry", "boundary dimension must be 2 or 3");
        if (!(radius > Scalar(0))) throw InvalidArgument("geometry", "boundary radius must be positive");
    }

    int dim() const { return static_cast<int>(center.size()); }

    Scalar surface_measure() const {
        using std::pow;
        return unit_sphere_measure<Scalar>(dim()) * pow(radius, dim() - 1);
    }
};

/// Nodes, weights, and outward normals discretizing a Boundary.
///
/// Nodes and normals are stored column-wise (dim x n). Weights carry surface
/// measure units, so weights.sum() equals the boundary's measure.
template <typename Scalar = double>
class QuadratureRule {
public:
    QuadratureRule(Boundary<Scalar> boundary, PointSet<Scalar> nodes, Vector<Scalar> weights)
        : boundary_(std::move(boundary)), nodes_(std::move(nodes)), weights_(std::move(weights)) {
        if (nodes_.rows() != boundary_.dim() || nodes_.cols() != weights_.size())
            throw DimensionMismatch("geometry", "quadrature nodes and weights disagree in size");
        normals_ = (nodes_.colwise() - boundary_.center) / boundary_.radius;
    }

    const Boundary<Scalar>& boundary() const { return boundary_; }
    const PointSet<Scalar>& nodes() const { return nodes_; }
    const PointSet<Scalar>& normals() const { return normals_; }
    const Vector<Scalar>& weights() const { return weights_; }

    Eigen::Index size() const { return weights_.size(); }
    int dim() const { return boundary_.dim(); }

    auto node(Eigen::Index j) const { return nodes_.col(j); }
    auto normal(Eigen::Index j) const { return normals_.col(j); }

    /// Quadrature of sampled values against the surface measure.
    template <typename Derived>
    Scalar integrate(const Eigen::MatrixBase<Derived>& values) const {
        if (values.size() != size()) throw DimensionMismatch("geometry", "sample count differs from node count");
        return weights_.dot(values.template cast<Scalar>());
    }

    /// Quadrature of f evaluated at every node.
    template <typename F>
    Scalar integrate_fn(F&& f) const {
        Scalar sum(0);
        for (Eigen::Index j = 0; j < size(); ++j) sum += weights_(j) * f(node(j));
        return sum;
    }

private:
    Boundary<Scalar> boundary_;
    PointSet<Scalar> nodes_;
    PointSet<Scalar> normals_;
    Vector<Scalar> weights_;
};

namespace detail {

// Returns (P_n(z), P_n'(z)) by the three-term recurrence.
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_with_derivative(int n, Scalar z) {
    Scalar p0(1), p1(z);
    for (int k = 2; k <= n; ++k) {
        const Scalar p2 = (Scalar(2 * k - 1) * z * p1 - Scalar(k - 1) * p0) / Scalar(k);
        p0 = p1;
        p1 = p2;
    }
    return {p1, Scalar(n) * (z * p1 - p0) / (z * z - Scalar(1))};
}

}  // namespace detail

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
template <typename Scalar = double>
std::pair<Vector<Scalar>, Vector<Scalar>> gauss_legendre(int n) {
    using std::abs;
    using std::cos;
    if (n < 1) throw InvalidArgument("geometry", "Gauss-Legendre order must be positive");
    Vector<Scalar> x(n), w(n);
    const Scalar eps = Eigen::NumTraits<Scalar>::epsilon();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Scalar z = cos(pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = detail::legendre_with_derivative(n, z);
            const Scalar dz = p / dp;
            z -= dz;
            if (abs(dz) <= Scalar(4) * eps) break;
        }
        const Scalar dp = detail::legendre_with_derivative(n, z).second;
        x(i) = -z;
        x(n - 1 - i) = z;
        w(i) = w(n - 1 - i) = Scalar(2) / ((Scalar(1) - z * z) * dp * dp);
    }
    if (n % 2 == 1) x(n / 2) = Scalar(0);
    return {std::move(x), std::move(w)};
}

/// Equispaced trapezoid rule on a circle: node j at angle 2*pi*j/n.
template <typename Scalar = double>
QuadratureRule<Scalar> make_circle_rule(const Point<Scalar>& center, Scalar radius, int n) {
    using std::cos;
    using std::sin;
    if (center.size() != 2) throw InvalidArgument("geometry", "circle rule needs a 2D center");
    if (n < 4) throw InvalidArgument("geometry", "circle rule needs at least 4 nodes");
    if (!(radius > Scalar(0))) throw InvalidArgument("geometry", "circle radius must be positive");

    PointSet<Scalar> nodes(2, n);
    for (int j = 0; j < n; ++j) {
        const Scalar t = Scalar(2) * pi_v<Scalar> * Scalar(j) / Scalar(n);
        nodes(0, j) = center(0) + radius * cos(t);
        nodes(1, j) = center(1) + radius * sin(t);
    }
    Vector<Scalar> weights = Vector<Scalar>::Constant(n, Scalar(2) * pi_v<Scalar> * radius / Scalar(n));
    return {Boundary<Scalar>(center, radius), std::move(nodes), std::move(weights)};
}

/// Product rule on a sphere: Gauss-Legendre in cos(polar angle) times the
/// trapezoid rule in azimuth. Node ordering is polar-major.
template <typename Scalar = double>
QuadratureRule<Scalar> make_sphere_rule(const Point<Scalar>& center, Scalar radius, int n_polar, int n_azimuth) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    if (center.size() != 3) throw InvalidArgument("geometry", "sphere rule needs a 3D center");
    if (n_polar < 2 || n_azimuth < 4)
        throw InvalidArgument("geometry", "sphere rule needs n_polar >= 2 and n_azimuth >= 4");
    if (!(radius > Scalar(0))) throw InvalidArgument("geometry", "sphere radius must be positive");

    const auto [ct, gw] = gauss_legendre<Scalar>(n_polar);
    const Eigen::Index n = Eigen::Index(n_polar) * n_azimuth;
    PointSet<Scalar> nodes(3, n);
    Vector<Scalar> weights(n);
    const Scalar dphi = Scalar(2) * pi_v<Scalar> / Scalar(n_azimuth);
    Eigen::Index j = 0;
    for (int p = 0; p < n_polar; ++p) {
        const Scalar st = sqrt(Scalar(1) - ct(p) * ct(p));
        for (int a = 0; a < n_azimuth; ++a, ++j) {
            const Scalar phi = dphi * Scalar(a);
            nodes(0, j) = center(0) + radius * st * cos(phi);
            nodes(1, j) = center(1) + radius * st * sin(phi);
            nodes(2, j) = center(2) + radius * ct(p);
            weights(j) = radius * radius * gw(p) * dphi;
        }
    }
    return {Boundary<Scalar>(center, radius), std::move(nodes), std::move(weights)};
}

/// Node-count request for one boundary: a single count on circles, a
/// (polar, azimuth) pair on spheres.
struct NodeCount {
    int primary = 128;
    int azimuth = 0;

    int total(int dim) const { return dim == 2 ? primary : primary * azimuth; }
    NodeCount doubled() const { return {primary * 2, azimuth * 2}; }
};

template <typename Scalar = double>
QuadratureRule<Scalar> make_rule(const Point<Scalar>& center, Scalar radius, const NodeCount& count) {
    if (center.size() == 2) return make_circle_rule<Scalar>(center, radius, count.primary);
    return make_sphere_rule<Scalar>(center, radius, count.primary, count.azimuth);
}

}  // namespace hsynth

#endif  // HSYNTH_GEOMETRY_HPP

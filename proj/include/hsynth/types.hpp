#ifndef HSYNTH_TYPES_HPP
#define HSYNTH_TYPES_HPP

#include <Eigen/Dense>

#include <initializer_list>

namespace hsynth {

// Points live in R^2 or R^3; the dimension is a runtime property of a scenario.
template <typename Scalar> using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar> using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using Point = Vector<Scalar>;
// Column-major point cloud: one column per point, dim rows.
template <typename Scalar> using PointSet = Matrix<Scalar>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;
using PointXd = Point<double>;

template <typename Scalar> constexpr Scalar pi_v = Scalar(3.141592653589793238462643383279502884L);

// Surface measure of the unit sphere S^{d-1}.
template <typename Scalar> constexpr Scalar unit_sphere_measure(int dim) {
    return dim == 2 ? Scalar(2) * pi_v<Scalar> : Scalar(4) * pi_v<Scalar>;
}

// Volume of the unit ball B_1 in R^d.
template <typename Scalar> constexpr Scalar unit_ball_volume(int dim) {
    return dim == 2 ? pi_v<Scalar> : Scalar(4) * pi_v<Scalar> / Scalar(3);
}

inline PointXd make_point(std::initializer_list<double> coords) {
    PointXd p(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) p(i++) = c;
    return p;
}

}  // namespace hsynth

#endif  // HSYNTH_TYPES_HPP

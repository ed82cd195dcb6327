#ifndef HSYNTH_FIELDS_HPP
#define HSYNTH_FIELDS_HPP

#include <memory>
#include <string>
#include <vector>

#include "hsynth/harmonic_field.hpp"
#include "hsynth/kernels.hpp"
#include "hsynth/operator.hpp"
#include "hsynth/scenario.hpp"

namespace hsynth {

/// Field radiated by the antenna density g: the quadrature of the
/// double-layer kernel against g. Points within 1e-6 * delta of the antenna
/// ball are rejected since the discrete layer is inaccurate there.
template <typename Scalar, typename DX>
Scalar eval_double_layer(const Density<Scalar>& g, const Eigen::MatrixBase<DX>& x) {
    const auto& rule = *g.rule;
    const auto& b = rule.boundary();
    if (x.size() != b.dim()) throw InvalidArgument("fields", "evaluation point dimension mismatch");
    if ((x - b.center).norm() < b.radius * (Scalar(1) + Scalar(1e-6)))
        throw InvalidArgument("fields", "double-layer evaluation too close to the antenna");
    Scalar sum(0);
    for (Eigen::Index j = 0; j < rule.size(); ++j)
        sum += dlp_kernel(x, rule.node(j), rule.normal(j)) * rule.weights()(j) * g.values(j);
    return sum;
}

/// Target trace for the reduced problem: block k holds u_k - u_0 at the
/// nodes of the k-th control sphere; the outer block is zero.
///
/// Throws ValidationError when a field is singular inside the ball it targets
/// or u_0 is not an admissible exterior field.
ControlTrace<double> build_target(const Scenario& s, std::shared_ptr<const ControlLayout<double>> layout);

/// Collects harmonicity-domain violations of the scenario's fields.
std::vector<std::string> field_domain_violations(const Scenario& s);

/// L2 norm of f over the ball B_r(c), by Gauss-Legendre in radius times the
/// circle or sphere rule on each shell.
double volume_l2_norm(const HarmonicField<double>& f, const PointXd& center, double radius, int radial_nodes = 32);

/// L2 norm of f over the sphere dB_r(c).
double surface_l2_norm(const HarmonicField<double>& f, const PointXd& center, double radius);

/// 1e-3 * (sum_k ||u_k||_{L2(D_k)} + ||u_0||_{L2(dB_R)}).
double paper_epsilon(const Scenario& s);

/// The epsilon the scenario asks for, resolving the normalized default.
double resolve_epsilon(const Scenario& s);

/// Axis-aligned box sampled at counts[i] points per axis (endpoints included).
struct GridSpec {
    PointXd lower;
    PointXd upper;
    std::vector<int> counts;
};

struct GridLabel {
    enum class Kind { region, annulus, exterior, excluded, error };
    Kind kind = Kind::annulus;
    int region = 0;  // 1-based when kind == region

    std::string name() const;
};

/// Evaluated total field u_0 + D g with per-point targets and relative
/// mismatch. Targets and mismatch are NaN where no target applies.
struct FieldGrid {
    PointSet<double> points;
    VectorXd total;
    VectorXd target;
    VectorXd mismatch;
    std::vector<GridLabel> labels;

    Eigen::Index size() const { return points.cols(); }
};

/// Mismatch floor is 1e-8 times the largest |target| among points sharing a
/// label; where every target in the group is zero the mismatch is absolute.
FieldGrid eval_on_grid(const Density<double>& g, const Scenario& s, const GridSpec& spec);

/// Evaluates an explicit list of points (used for random probes).
FieldGrid eval_on_points(const Density<double>& g, const Scenario& s, const PointSet<double>& points);

}  // namespace hsynth

#endif  // HSYNTH_FIELDS_HPP

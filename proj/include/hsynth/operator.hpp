#ifndef HSYNTH_OPERATOR_HPP
#define HSYNTH_OPERATOR_HPP

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "hsynth/error.hpp"
#include "hsynth/geometry.hpp"
#include "hsynth/kernels.hpp"
#include "hsynth/types.hpp"

namespace hsynth {

/// The control boundaries of the product space Xi, concatenated in order.
template <typename Scalar = double>
class ControlLayout {
public:
    explicit ControlLayout(std::vector<QuadratureRule<Scalar>> rules) : rules_(std::move(rules)) {
        if (rules_.empty()) throw InvalidArgument("operator", "at least one control boundary is required");
        offsets_.push_back(0);
        for (const auto& r : rules_) offsets_.push_back(offsets_.back() + r.size());
        weights_.resize(offsets_.back());
        for (std::size_t k = 0; k < rules_.size(); ++k) weights_.segment(offsets_[k], rules_[k].size()) = rules_[k].weights();
    }

    const std::vector<QuadratureRule<Scalar>>& rules() const { return rules_; }
    std::size_t block_count() const { return rules_.size(); }
    Eigen::Index offset(std::size_t k) const { return offsets_[k]; }
    Eigen::Index block_size(std::size_t k) const { return rules_[k].size(); }
    Eigen::Index size() const { return offsets_.back(); }
    const Vector<Scalar>& weights() const { return weights_; }

    bool compatible(const ControlLayout& other) const {
        return this == &other || (offsets_ == other.offsets_ && weights_ == other.weights_);
    }

private:
    std::vector<QuadratureRule<Scalar>> rules_;
    std::vector<Eigen::Index> offsets_;
    Vector<Scalar> weights_;
};

/// Real function sampled at the antenna nodes.
template <typename Scalar = double>
struct Density {
    std::shared_ptr<const QuadratureRule<Scalar>> rule;
    Vector<Scalar> values;

    Density(std::shared_ptr<const QuadratureRule<Scalar>> r, Vector<Scalar> v) : rule(std::move(r)), values(std::move(v)) {
        if (!rule || values.size() != rule->size()) throw DimensionMismatch("operator", "density size differs from antenna node count");
    }

    static Density zero(std::shared_ptr<const QuadratureRule<Scalar>> r) {
        const auto n = r->size();
        return Density(std::move(r), Vector<Scalar>::Zero(n));
    }
};

/// Element of Xi: one block of samples per control boundary.
template <typename Scalar = double>
struct ControlTrace {
    std::shared_ptr<const ControlLayout<Scalar>> layout;
    Vector<Scalar> values;

    ControlTrace(std::shared_ptr<const ControlLayout<Scalar>> l, Vector<Scalar> v) : layout(std::move(l)), values(std::move(v)) {
        if (!layout || values.size() != layout->size()) throw DimensionMismatch("operator", "trace size differs from control node count");
    }

    static ControlTrace zero(std::shared_ptr<const ControlLayout<Scalar>> l) {
        const auto n = l->size();
        return ControlTrace(std::move(l), Vector<Scalar>::Zero(n));
    }

    auto block(std::size_t k) { return values.segment(layout->offset(k), layout->block_size(k)); }
    auto block(std::size_t k) const { return values.segment(layout->offset(k), layout->block_size(k)); }
};

template <typename Scalar>
Scalar l2_inner(const Density<Scalar>& a, const Density<Scalar>& b) {
    if (a.values.size() != b.values.size()) throw DimensionMismatch("operator", "densities on different antenna rules");
    return (a.rule->weights().array() * (a.values.array() * b.values.array())).sum();
}

template <typename Scalar>
Scalar l2_norm(const Density<Scalar>& a) {
    using std::sqrt;
    return sqrt(l2_inner(a, a));
}

/// Xi inner product: sum over boundaries of the weighted quadrature of s*t.
template <typename Scalar>
Scalar xi_inner(const ControlTrace<Scalar>& s, const ControlTrace<Scalar>& t) {
    if (!s.layout->compatible(*t.layout)) throw DimensionMismatch("operator", "traces live on different control rules");
    return (s.layout->weights().array() * (s.values.array() * t.values.array())).sum();
}

template <typename Scalar>
Scalar xi_norm(const ControlTrace<Scalar>& t) {
    using std::sqrt;
    return sqrt(xi_inner(t, t));
}

/// L2 norm of a single block of a trace.
template <typename Scalar>
Scalar block_norm(const ControlTrace<Scalar>& t, std::size_t k) {
    using std::sqrt;
    const auto& w = t.layout->rules()[k].weights();
    return sqrt((w.array() * t.block(k).array().square()).sum());
}

/// Thin SVD of W_Xi^{1/2} K W_delta^{-1/2}; singular values are operator
/// singular values with respect to the L2 and Xi norms.
template <typename Scalar = double>
struct WeightedSvd {
    Vector<Scalar> singular_values;
    Matrix<Scalar> u;  // rows = control nodes
    Matrix<Scalar> v;  // rows = antenna nodes

    Scalar largest() const { return singular_values.size() ? singular_values(0) : Scalar(0); }

    /// Number of singular values above rel_cut * sigma_1.
    Eigen::Index numerical_rank(Scalar rel_cut) const {
        Eigen::Index r = 0;
        while (r < singular_values.size() && singular_values(r) > rel_cut * largest()) ++r;
        return r;
    }
};

/// Dense Nystrom realization of the double-layer map from antenna densities
/// to traces on the control boundaries.
///
/// Entry (i, j) is dlp_kernel(x_i, y_j, nu_j) * w_j. The weighted SVD is
/// computed once at construction; the object is immutable afterwards.
template <typename Scalar = double>
class ForwardOperator {
public:
    ForwardOperator(std::shared_ptr<const QuadratureRule<Scalar>> antenna, std::shared_ptr<const ControlLayout<Scalar>> layout,
                    Matrix<Scalar> matrix)
        : antenna_(std::move(antenna)), layout_(std::move(layout)), matrix_(std::move(matrix)) {
        if (!antenna_ || !layout_) throw InvalidArgument("operator", "missing antenna or control rules");
        if (matrix_.rows() != layout_->size() || matrix_.cols() != antenna_->size())
            throw DimensionMismatch("operator", "matrix shape differs from control x antenna node counts");
        if (!matrix_.allFinite()) throw NumericalError("operator", "non-finite operator entries");
        factorize();
    }

    const std::shared_ptr<const QuadratureRule<Scalar>>& antenna() const { return antenna_; }
    const std::shared_ptr<const ControlLayout<Scalar>>& layout() const { return layout_; }
    const Matrix<Scalar>& matrix() const { return matrix_; }
    const Vector<Scalar>& row_weights() const { return layout_->weights(); }
    const Vector<Scalar>& col_weights() const { return antenna_->weights(); }
    const WeightedSvd<Scalar>& spectrum() const { return svd_; }

    Eigen::Index rows() const { return matrix_.rows(); }
    Eigen::Index cols() const { return matrix_.cols(); }

    /// W_Xi^{1/2} K W_delta^{-1/2}.
    Matrix<Scalar> weighted_matrix() const {
        return row_weights().cwiseSqrt().asDiagonal() * matrix_ * col_weights().cwiseSqrt().cwiseInverse().asDiagonal();
    }

private:
    void factorize() {
        Eigen::BDCSVD<Matrix<Scalar>> svd(weighted_matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success) throw NumericalError("operator", "weighted SVD did not converge");
        svd_.singular_values = svd.singularValues();
        svd_.u = svd.matrixU();
        svd_.v = svd.matrixV();
        if (!svd_.singular_values.allFinite()) throw NumericalError("operator", "weighted SVD produced non-finite values");
    }

    std::shared_ptr<const QuadratureRule<Scalar>> antenna_;
    std::shared_ptr<const ControlLayout<Scalar>> layout_;
    Matrix<Scalar> matrix_;
    WeightedSvd<Scalar> svd_;
};

namespace detail {

// Non-intersecting spheres: the control boundary lies outside the antenna
// ball or encloses it, with a strictly positive gap.
template <typename Scalar>
bool separated(const Boundary<Scalar>& antenna, const Boundary<Scalar>& control) {
    const Scalar dc = (control.center - antenna.center).norm();
    return dc > control.radius + antenna.radius || control.radius > dc + antenna.radius;
}

}  // namespace detail

template <typename Scalar>
ForwardOperator<Scalar> assemble_forward(std::shared_ptr<const QuadratureRule<Scalar>> antenna,
                                         std::shared_ptr<const ControlLayout<Scalar>> layout) {
    for (std::size_t k = 0; k < layout->block_count(); ++k) {
        const auto& rule = layout->rules()[k];
        if (rule.dim() != antenna->dim()) throw DimensionMismatch("operator", "control and antenna dimensions differ");
        if (!detail::separated(antenna->boundary(), rule.boundary()))
            throw InvalidArgument("operator", "control boundary " + std::to_string(k + 1) + " touches the antenna ball");
    }
    Matrix<Scalar> m(layout->size(), antenna->size());
    const auto& w = antenna->weights();
    for (std::size_t k = 0; k < layout->block_count(); ++k) {
        const auto& rule = layout->rules()[k];
        const Eigen::Index off = layout->offset(k);
        for (Eigen::Index i = 0; i < rule.size(); ++i)
            for (Eigen::Index j = 0; j < antenna->size(); ++j)
                m(off + i, j) = dlp_kernel(rule.node(i), antenna->node(j), antenna->normal(j)) * w(j);
    }
    return ForwardOperator<Scalar>(std::move(antenna), std::move(layout), std::move(m));
}

template <typename Scalar>
ForwardOperator<Scalar> assemble_forward(const QuadratureRule<Scalar>& antenna, std::vector<QuadratureRule<Scalar>> controls) {
    return assemble_forward<Scalar>(std::make_shared<const QuadratureRule<Scalar>>(antenna),
                                    std::make_shared<const ControlLayout<Scalar>>(std::move(controls)));
}

/// Discrete double-layer traces of h on every control boundary.
template <typename Scalar>
ControlTrace<Scalar> apply(const ForwardOperator<Scalar>& K, const Density<Scalar>& h) {
    if (h.values.size() != K.cols()) throw DimensionMismatch("operator", "density size differs from operator columns");
    return ControlTrace<Scalar>(K.layout(), K.matrix() * h.values);
}

/// Discrete adjoint with respect to the weighted inner products:
/// K* = W_delta^{-1} K^T W_Xi, so <K u, t>_Xi = <u, K* t>_L2 holds exactly.
template <typename Scalar>
Density<Scalar> apply_adjoint(const ForwardOperator<Scalar>& K, const ControlTrace<Scalar>& t) {
    if (t.values.size() != K.rows()) throw DimensionMismatch("operator", "trace size differs from operator rows");
    Vector<Scalar> out = K.matrix().transpose() * K.row_weights().cwiseProduct(t.values);
    out.array() /= K.col_weights().array();
    return Density<Scalar>(K.antenna(), std::move(out));
}

template <typename Scalar>
const WeightedSvd<Scalar>& weighted_svd(const ForwardOperator<Scalar>& K) {
    return K.spectrum();
}

}  // namespace hsynth

#endif  // HSYNTH_OPERATOR_HPP

#ifndef HSYNTH_HARMONIC_FIELD_HPP
#define HSYNTH_HARMONIC_FIELD_HPP

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hsynth/error.hpp"
#include "hsynth/types.hpp"

namespace hsynth {

/// One term c * x^i y^j z^k of a polynomial.
template <typename Scalar = double>
struct Monomial {
    Scalar coefficient;
    std::array<int, 3> exponents;
};

namespace field {

struct Zero {};

template <typename Scalar> struct Constant {
    Scalar value;
};

/// ln(1/|x - s|), 2D only.
template <typename Scalar> struct LogSource {
    Point<Scalar> source;
};

/// 1/|x - s|, 3D only.
template <typename Scalar> struct PointSource {
    Point<Scalar> source;
};

/// p.(x - s) / |x - s|^d.
template <typename Scalar> struct Dipole {
    Point<Scalar> source;
    Point<Scalar> direction;
};

template <typename Scalar> struct HarmonicPolynomial {
    std::vector<Monomial<Scalar>> terms;
};

}  // namespace field

/// Closed-form harmonic field, either entire or harmonic away from one
/// singular point.
template <typename Scalar = double>
class HarmonicField {
public:
    using Variant = std::variant<field::Zero, field::Constant<Scalar>, field::LogSource<Scalar>,
                                 field::PointSource<Scalar>, field::Dipole<Scalar>,
                                 field::HarmonicPolynomial<Scalar>>;

    HarmonicField() : dim_(2), v_(field::Zero{}) {}

    static HarmonicField zero(int dim) { return HarmonicField(dim, field::Zero{}); }
    static HarmonicField constant(int dim, Scalar c) { return HarmonicField(dim, field::Constant<Scalar>{c}); }

    static HarmonicField log_source(Point<Scalar> s) {
        if (s.size() != 2) throw InvalidArgument("fields", "log_source is a 2D field");
        return HarmonicField(2, field::LogSource<Scalar>{std::move(s)});
    }

    static HarmonicField point_source(Point<Scalar> s) {
        if (s.size() != 3) throw InvalidArgument("fields", "point_source is a 3D field");
        return HarmonicField(3, field::PointSource<Scalar>{std::move(s)});
    }

    static HarmonicField dipole(Point<Scalar> s, Point<Scalar> p) {
        if (s.size() != p.size() || (s.size() != 2 && s.size() != 3))
            throw InvalidArgument("fields", "dipole source and direction must share dimension 2 or 3");
        const int d = static_cast<int>(s.size());
        return HarmonicField(d, field::Dipole<Scalar>{std::move(s), std::move(p)});
    }

    /// Rejects terms of degree > 3 and polynomials whose Laplacian is not
    /// identically zero.
    static HarmonicField harmonic_polynomial(int dim, std::vector<Monomial<Scalar>> terms) {
        if (dim != 2 && dim != 3) throw InvalidArgument("fields", "polynomial dimension must be 2 or 3");
        Scalar scale(0);
        std::map<std::array<int, 3>, Scalar> lap;
        for (const auto& t : terms) {
            const auto& e = t.exponents;
            if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw InvalidArgument("fields", "negative monomial exponent");
            if (dim == 2 && e[2] != 0) throw InvalidArgument("fields", "z exponent in a 2D polynomial");
            if (e[0] + e[1] + e[2] > 3) throw InvalidArgument("fields", "harmonic polynomial degree is capped at 3");
            scale = std::max(scale, Scalar(std::abs(t.coefficient)));
            for (int axis = 0; axis < 3; ++axis) {
                if (e[axis] < 2) continue;
                auto d = e;
                d[axis] -= 2;
                lap[d] += t.coefficient * Scalar(e[axis] * (e[axis] - 1));
            }
        }
        for (const auto& [_, c] : lap)
            if (std::abs(c) > Scalar(1e-12) * scale) throw InvalidArgument("fields", "polynomial is not harmonic");
        return HarmonicField(dim, field::HarmonicPolynomial<Scalar>{std::move(terms)});
    }

    int dim() const { return dim_; }
    const Variant& variant() const { return v_; }

    std::string kind() const {
        return std::visit(
            [](const auto& f) -> std::string {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, field::Zero>) return "zero";
                else if constexpr (std::is_same_v<T, field::Constant<Scalar>>) return "constant";
                else if constexpr (std::is_same_v<T, field::LogSource<Scalar>>) return "log_source";
                else if constexpr (std::is_same_v<T, field::PointSource<Scalar>>) return "point_source";
                else if constexpr (std::is_same_v<T, field::Dipole<Scalar>>) return "dipole";
                else return "harmonic_polynomial";
            },
            v_);
    }

    /// The point where the field is singular, if any.
    std::optional<Point<Scalar>> singular_point() const {
        return std::visit(
            [](const auto& f) -> std::optional<Point<Scalar>> {
                if constexpr (requires { f.source; }) return f.source;
                else return std::nullopt;
            },
            v_);
    }

    bool is_zero() const { return std::holds_alternative<field::Zero>(v_); }

    /// True when the field stays bounded at infinity (2D) or decays (3D),
    /// the growth required of an exterior field.
    bool admissible_at_infinity() const {
        return std::visit(
            [this](const auto& f) -> bool {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, field::Zero> || std::is_same_v<T, field::Dipole<Scalar>> ||
                              std::is_same_v<T, field::PointSource<Scalar>>)
                    return true;
                else if constexpr (std::is_same_v<T, field::Constant<Scalar>>) return dim_ == 2 || f.value == Scalar(0);
                else if constexpr (std::is_same_v<T, field::LogSource<Scalar>>) return false;
                else {
                    for (const auto& t : f.terms) {
                        const bool constant_term = t.exponents[0] + t.exponents[1] + t.exponents[2] == 0;
                        if (t.coefficient != Scalar(0) && (!constant_term || dim_ == 3)) return false;
                    }
                    return true;
                }
            },
            v_);
    }

private:
    HarmonicField(int dim, Variant v) : dim_(dim), v_(std::move(v)) {
        if (dim_ != 2 && dim_ != 3) throw InvalidArgument("fields", "field dimension must be 2 or 3");
    }

    int dim_;
    Variant v_;
};

namespace detail {

template <typename Scalar, typename DX>
Scalar singular_offset_sq(const Point<Scalar>& s, const Eigen::MatrixBase<DX>& x) {
    const Scalar r2 = (x - s).squaredNorm();
    if (!(r2 >= Scalar(1e-18))) throw InvalidArgument("fields", "evaluation at the field's singular point");
    return r2;
}

}  // namespace detail

/// Closed-form value of f at x.
template <typename Scalar, typename DX>
Scalar eval_field(const HarmonicField<Scalar>& f, const Eigen::MatrixBase<DX>& x) {
    using std::log;
    using std::pow;
    using std::sqrt;
    if (x.size() != f.dim()) throw InvalidArgument("fields", "evaluation point dimension differs from field dimension");
    return std::visit(
        [&](const auto& g) -> Scalar {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, field::Zero>) {
                return Scalar(0);
            } else if constexpr (std::is_same_v<T, field::Constant<Scalar>>) {
                return g.value;
            } else if constexpr (std::is_same_v<T, field::LogSource<Scalar>>) {
                return -log(detail::singular_offset_sq(g.source, x)) / Scalar(2);
            } else if constexpr (std::is_same_v<T, field::PointSource<Scalar>>) {
                return Scalar(1) / sqrt(detail::singular_offset_sq(g.source, x));
            } else if constexpr (std::is_same_v<T, field::Dipole<Scalar>>) {
                const Scalar r2 = detail::singular_offset_sq(g.source, x);
                const Scalar rd = f.dim() == 2 ? r2 : r2 * sqrt(r2);
                return g.direction.dot(x - g.source) / rd;
            } else {
                Scalar sum(0);
                for (const auto& t : g.terms) {
                    Scalar m = t.coefficient;
                    for (int axis = 0; axis < f.dim(); ++axis)
                        for (int k = 0; k < t.exponents[axis]; ++k) m *= x(axis);
                    sum += m;
                }
                return sum;
            }
        },
        f.variant());
}

}  // namespace hsynth

#endif  // HSYNTH_HARMONIC_FIELD_HPP

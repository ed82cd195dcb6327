#ifndef HSYNTH_CERTIFY_HPP
#define HSYNTH_CERTIFY_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hsynth/error.hpp"
#include "hsynth/operator.hpp"
#include "hsynth/scenario.hpp"
#include "hsynth/types.hpp"

namespace hsynth {

// paper: conservative constant with the unit-ball volume |B_1|.
// sharp: the same bound with the unit-sphere measure omega_d = d |B_1|.
enum class ConstantForm { paper, sharp };

namespace detail {

template <typename Scalar>
Scalar normalization(int dim, ConstantForm form) {
    return form == ConstantForm::paper ? unit_ball_volume<Scalar>(dim) : unit_sphere_measure<Scalar>(dim);
}

}  // namespace detail

/// sup over the closed ball B_a of a harmonic function is at most this
/// constant times the L1 norm of its trace on dB_{a'}.
template <typename Scalar>
Scalar interior_constant(Scalar a, Scalar a_prime, int dim, ConstantForm form = ConstantForm::paper) {
    using std::pow;
    if (!(a > Scalar(0)) || !(a < a_prime)) throw InvalidArgument("certify", "interior bound needs 0 < a < a'");
    return (a_prime + a) / (detail::normalization<Scalar>(dim, form) * a_prime * pow(a_prime - a, dim - 1));
}

/// Exterior counterpart: sup outside B_r over the L1 trace norm on dB_{r'}.
template <typename Scalar>
Scalar exterior_constant(Scalar r_prime, Scalar r, int dim, ConstantForm form = ConstantForm::paper) {
    using std::pow;
    if (!(r_prime > Scalar(0)) || !(r_prime < r)) throw InvalidArgument("certify", "exterior bound needs 0 < r' < r");
    return (r + r_prime) / (detail::normalization<Scalar>(dim, form) * r_prime * pow(r - r_prime, dim - 1));
}

/// Cauchy-Schwarz factor ||f||_L1 <= sqrt(|dB_r|) ||f||_L2.
template <typename Scalar>
Scalar l1_conversion(Scalar radius, int dim) {
    using std::pow;
    using std::sqrt;
    return sqrt(unit_sphere_measure<Scalar>(dim) * pow(radius, dim - 1));
}

template <typename Scalar>
Scalar interior_bound(Scalar mismatch_l2, Scalar a, Scalar a_prime, int dim, ConstantForm form = ConstantForm::paper) {
    if (!(mismatch_l2 >= Scalar(0))) throw InvalidArgument("certify", "mismatch must be nonnegative");
    return interior_constant(a, a_prime, dim, form) * l1_conversion(a_prime, dim) * mismatch_l2;
}

template <typename Scalar>
Scalar exterior_bound(Scalar mismatch_l2, Scalar r_prime, Scalar r, int dim, ConstantForm form = ConstantForm::paper) {
    if (!(mismatch_l2 >= Scalar(0))) throw InvalidArgument("certify", "mismatch must be nonnegative");
    return exterior_constant(r_prime, r, dim, form) * l1_conversion(r_prime, dim) * mismatch_l2;
}

/// One boundary's contribution: residual on the control sphere and the
/// resulting sup-norm bound on the region it protects.
struct BoundaryCertificate {
    std::string name;
    double residual_l2 = 0;
    double conversion = 0;
    double constant_paper = 0;
    double constant_sharp = 0;
    double bound_paper = 0;
    double bound_sharp = 0;
};

struct Certificate {
    std::vector<BoundaryCertificate> regions;
    BoundaryCertificate exterior;
};

/// Feeds the per-boundary residuals of K h - v through the interior and
/// exterior bounds. The bound on region k covers sup over the closed B_{a_k}
/// of |D h - (u_k - u_0)|; the exterior bound covers sup outside B_R of |D h|.
Certificate certify_solution(const ForwardOperator<double>& K, const Density<double>& h, const ControlTrace<double>& v,
                             const Scenario& s);

/// Monte-Carlo estimates of the sup-norm mismatches a Certificate bounds.
struct EmpiricalSup {
    std::vector<double> regions;
    double exterior = 0;
};

/// Samples n points per region (half on the sphere dB_{a_k}, half uniform in
/// the ball) and n exterior points (half on |x| = R, half with R <= |x| <= 3R).
EmpiricalSup sample_sup_mismatch(const Density<double>& h, const Scenario& s, int n, std::uint64_t seed);

/// True when every sampled sup is at most its paper-form bound.
bool certificate_holds(const Certificate& c, const EmpiricalSup& e);

}  // namespace hsynth

#endif  // HSYNTH_CERTIFY_HPP

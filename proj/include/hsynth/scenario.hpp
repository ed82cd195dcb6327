#ifndef HSYNTH_SCENARIO_HPP
#define HSYNTH_SCENARIO_HPP

#include <cstdint>
#include <vector>

#include "hsynth/geometry.hpp"
#include "hsynth/harmonic_field.hpp"
#include "hsynth/types.hpp"

namespace hsynth {

/// Region of interest D_k = B_a(x_k) with its control sphere B_{a'}(x_k) and
/// the field u_k to reproduce there.
struct Region {
    PointXd center;
    double radius = 0;
    double control_radius = 0;
    HarmonicField<double> field;
};

/// Accuracy target: an explicit value, or the normalization
/// 1e-3 * (sum_k ||u_k||_{L2(D_k)} + ||u_0||_{L2(dD)}).
struct EpsilonSpec {
    enum class Kind { value, paper };
    Kind kind = Kind::paper;
    double value = 0;

    static EpsilonSpec explicit_value(double v) { return {Kind::value, v}; }
    static EpsilonSpec paper() { return {Kind::paper, 0}; }
};

struct Discretization {
    NodeCount antenna;
    NodeCount control;
};

struct Scenario {
    int dim = 2;
    double delta = 1;                // antenna radius
    std::vector<Region> regions;
    double outer_control_radius = 0; // R'
    double outer_radius = 0;         // R
    HarmonicField<double> exterior_field;
    EpsilonSpec epsilon;
    Discretization discretization;
    std::uint64_t seed = 1;

    PointXd origin() const { return PointXd::Zero(dim); }
};

/// Default control radius a' = a + min(a/2, (|x| - a - delta)/4, (R - |x| - a)/2).
double default_control_radius(const PointXd& center, double radius, double delta, double outer_radius);

/// Default R' = (R + max_k(|x_k| + a'_k)) / 2.
double default_outer_control_radius(const std::vector<Region>& regions, double outer_radius);

/// Default node counts: 128 per circle, 24 x 48 per sphere.
Discretization default_discretization(int dim);

/// Returns the scenario unchanged when all geometric constraints hold;
/// otherwise throws ValidationError listing every violation.
const Scenario& validate_scenario(const Scenario& s);

/// Two-dimensional experiment: two regions of radius 2 at (0,12) and (10,0),
/// u_1 = ln(1/|x|), u_2 = x_1/|x|^2, u_0 = 0, R = 15, delta = 1.
Scenario paper_2d_scenario();

/// Three-dimensional experiment: one region of radius 2 at (10,0,0),
/// u_1 = 1/|x|, u_0 = 0, R = 15, delta = 1.
Scenario paper_3d_scenario();

QuadratureRule<double> antenna_rule(const Scenario& s);

/// Control rules ordered as region 1..N control spheres, then the outer one.
std::vector<QuadratureRule<double>> control_rules(const Scenario& s);

}  // namespace hsynth

#endif  // HSYNTH_SCENARIO_HPP

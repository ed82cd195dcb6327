#ifndef HSYNTH_PROBLEM_HPP
#define HSYNTH_PROBLEM_HPP

#include <memory>

#include "hsynth/fields.hpp"
#include "hsynth/operator.hpp"
#include "hsynth/scenario.hpp"

namespace hsynth {

/// Discretized scenario: antenna rule, control rules, assembled operator,
/// and the reduced target trace.
struct Problem {
    std::shared_ptr<const QuadratureRule<double>> antenna;
    std::shared_ptr<const ControlLayout<double>> layout;
    ForwardOperator<double> op;
    ControlTrace<double> target;
};

/// Validates s, then assembles the operator and target at its discretization.
inline Problem build_problem(const Scenario& s) {
    validate_scenario(s);
    auto antenna = std::make_shared<const QuadratureRule<double>>(antenna_rule(s));
    auto layout = std::make_shared<const ControlLayout<double>>(control_rules(s));
    auto target = build_target(s, layout);
    auto op = assemble_forward<double>(antenna, layout);
    return {std::move(antenna), std::move(layout), std::move(op), std::move(target)};
}

}  // namespace hsynth

#endif  // HSYNTH_PROBLEM_HPP

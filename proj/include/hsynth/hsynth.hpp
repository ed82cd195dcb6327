#ifndef HSYNTH_HSYNTH_HPP
#define HSYNTH_HSYNTH_HPP

#include "hsynth/certify.hpp"
#include "hsynth/error.hpp"
#include "hsynth/fields.hpp"
#include "hsynth/geometry.hpp"
#include "hsynth/harmonic_field.hpp"
#include "hsynth/kernels.hpp"
#include "hsynth/operator.hpp"
#include "hsynth/problem.hpp"
#include "hsynth/scenario.hpp"
#include "hsynth/solver.hpp"
#include "hsynth/types.hpp"

#endif  // HSYNTH_HSYNTH_HPP

#pragma once

// Exact conic feasibility: is a target vector a nonnegative combination of a
// finite set of generators? Solved with a phase-one simplex over the
// rationals using Bland's rule, so it terminates and never rounds.
//
// By Farkas' lemma, c.x >= 0 holds on {x : a_i.x >= 0} exactly when c lies in
// the cone spanned by the a_i, which gives a membership test that never looks
// at extreme rays.

#include <optional>
#include <vector>

#include "core/cone_engine.hpp"

namespace optcorr {

/// Nonnegative multipliers lambda with sum_i lambda_i g_i = target, if any.
std::optional<RationalVector> conic_combination(const std::vector<IntVector>& generators, const IntVector& target);

/// Farkas-route twin of valid_on_cone.
bool valid_by_farkas(const IntVector& c, const RationalCone& cone);

}  // namespace optcorr

#pragma once

#include "qpi/builders.hpp"

namespace qpi {

/// One entry point for both kinds of sides: closed formulas are expanded
/// directly, enumeration-backed left sides are produced from the weight
/// slice N = q_max (and length slice L = a_max for the pair sums).
series build_side(identity_id id, formula_side side, const window& w,
                  exec_policy pol = exec_policy::automatic);

}  // namespace qpi

#pragma once

#include "infrared/rational.hpp"

#include <vector>

namespace ir {

// coeffs . x  (= or >)  rhs
struct LinearConstraint {
    VecQ coeffs;
    Rational rhs;
};

struct LpResult {
    bool feasible = false;
    VecQ witness;   // valid when feasible
    Rational slack; // optimal common slack t (capped at 1)
};

// Finds x with all equalities holding and every strict inequality satisfied strictly.
// Maximizes a common slack t <= 1 by the simplex method with Bland's rule.
LpResult lp_strict_feasible(std::size_t nvars, const std::vector<LinearConstraint>& equalities,
                            const std::vector<LinearConstraint>& strict_inequalities);

} // namespace ir

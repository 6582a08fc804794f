#pragma once

#include <optional>
#include <vector>

#include "idxcap/rational.hpp"

namespace idxcap {

// Exact rational linear programming, dense simplex with Bland's rule.
// Problem form: minimize c'x subject to Ax (<=|=|>=) b, x >= 0.

enum class Sense { LessEq, Eq, GreaterEq };

struct LpConstraint {
    std::vector<Rational> coeffs;
    Sense sense;
    Rational rhs;
};

struct LpResult {
    bool feasible = false;
    bool bounded = true;
    Rational value;
    std::vector<Rational> solution;
};

LpResult solve_lp(const std::vector<Rational>& objective, const std::vector<LpConstraint>& constraints);

// Feasibility only (empty objective).
bool lp_feasible(const std::vector<LpConstraint>& constraints, std::size_t num_vars);

}  // namespace idxcap

#pragma once

#include "contextus/rational.hpp"

#include <optional>
#include <vector>

namespace contextus {

// Equality-constrained feasibility problem: A x = b, x >= 0.
struct LinearSystem {
    std::size_t vars = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;

    void add_equality(std::vector<Rational> row, Rational b);
};

struct LpResult {
    bool feasible = false;
    // Nonnegative rational point satisfying every equality exactly.
    std::optional<std::vector<Rational>> witness;
    // Farkas certificate of infeasibility: y with y^T A <= 0 and y^T b > 0.
    std::optional<std::vector<Rational>> farkas;
};

// Exact phase-1 simplex with Bland's rule. Decides feasibility only;
// problem sizes in this project are small, so no effort is spent on
// sparse storage or revised pivoting.
LpResult lp_feasible(const LinearSystem& sys);

} // namespace contextus

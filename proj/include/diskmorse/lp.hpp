#ifndef DISKMORSE_LP_HPP
#define DISKMORSE_LP_HPP

#include <span>
#include <vector>

#include "diskmorse/linalg.hpp"

namespace diskmorse {

/// Result of the feasibility problem  A w = b, w >= 0.
struct LpFeasibility {
    bool feasible = false;
    std::vector<double> solution;  // w, when feasible
    std::vector<double> farkas;    // y with yᵀA <= 0 and yᵀb > 0, when infeasible
    double residual = 0.0;         // max |A w - b| of the returned solution
};

/// Phase-1 simplex on the standard-form system (dense tableau, Bland's
/// rule). rows = A.size(), all rows must have the same length.
LpFeasibility solve_equality_feasibility(const std::vector<std::vector<double>>& A,
                                         std::span<const double> b);

}  // namespace diskmorse

#endif

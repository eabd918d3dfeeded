#pragma once

#include <vector>

#include "qes/generator.hpp"

namespace qes {

// Piecewise-constant square-root sign over one period.
struct BranchMap {
    double period = 0.0;
    std::vector<double> breakpoints;  // sorted, strictly inside (0, L)
    std::vector<int> signs;           // signs[i] holds on (b[i-1], b[i]) with b[-1] = 0 and b[n] = L

    // Sign at x (reduced modulo L); at a breakpoint the sign of the interval to its right.
    int sign_at(double x) const;
};

// Sign + on the interval just left of x_m, propagated leftwards across discriminant
// zeros by local continuation and mirrored with opposite sign to the right half.
// Throws BranchInconsistency when the result is not continuous or W+ is not odd.
BranchMap build_branch_map(const GeneratingFunction& g);

}  // namespace qes

#pragma once

#include "idxcap/budget.hpp"
#include "idxcap/graph.hpp"

namespace idxcap {

struct ThetaResult {
    double value = 0.0;  // dual objective: a valid upper bound on theta
    double tol = 0.0;    // final duality gap; |value - theta| <= tol
    int iterations = 0;
    bool converged = false;
};

// Lovasz theta via the standard SDP (max <J,X> s.t. tr X = 1, X_ij = 0 on
// edges, X psd), solved by a feasible-start primal-dual interior point
// method. |V| <= 128. The reported value is always the dual objective, so it
// upper-bounds theta even when unconverged.
ThetaResult lovasz_theta(const UndirectedGraph& u, double tol = 1e-6);

// lower = max_{k <= kmax} alpha(u^{boxtimes k})^{1/k}; upper = theta(u).
// Requires |V|^kmax within the 4096-vertex cap.
std::pair<double, double> shannon_capacity_bracket(const UndirectedGraph& u, int kmax, Budget* budget = nullptr);

}  // namespace idxcap

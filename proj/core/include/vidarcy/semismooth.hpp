#pragma once

#include "vidarcy/bounds.hpp"
#include "vidarcy/newton.hpp"

namespace vidarcy {

/// @file semismooth.hpp
/// Semi-smooth Newton solver for the box-constrained mixed complementarity
/// problem: at the solution every dof satisfies
///   v = lo  with F >= 0,   lo < v < hi  with F = 0,   v = hi  with F <= 0.
///
/// The sign conditions are recast with the Fischer-Burmeister function
/// phi(a, b) = sqrt(a^2 + b^2) - a - b, which vanishes exactly when a, b >= 0
/// and a b = 0:
///   lower bound only:  Phi = phi(v - lo, F)
///   upper bound only:  Phi = -phi(hi - v, -F)
///   both bounds:       Phi = phi(v - lo, phi(hi - v, -F))
///   no bounds:         Phi = F
/// Each iteration solves H delta = -Phi with a generalized Jacobian
/// H_n = d_e(n) e_n + d_j(n) J_n (row n of the identity and of the smooth
/// Jacobian); at kink points the subgradient is the limit from the inactive
/// side, so exactly-active dofs with zero residual behave as inactive.  The
/// step length backtracks until the merit ||Phi||_2 shows sufficient
/// decrease, and iterates are clamped into [lo, hi] after every trial.

// Hook for alternative complementarity reformulations; only the
// Fischer-Burmeister semi-smooth variant is implemented.
enum class McpMethod { SemismoothFischerBurmeister };

struct SemismoothOptions {
    // Merit target; negative selects 1e-8 * (initial merit).
    double atol = -1.0;
    // Step-size convergence: an accepted step with ||delta|| <= stol * ||v||
    // also counts as converged.  Warm-started runs begin with a small merit
    // whose 1e-8 multiple can sit below the assembly rounding floor; once
    // steps shrink to relative machine scale the iteration has delivered
    // everything double precision holds.
    double stol = 1e-8;
    int max_iterations = 50;
    // Cap on the inner linear tolerance; each step also tightens it toward
    // whatever would finish the merit iteration outright.
    double linear_rtol = 1e-7;
    int gmres_restart = 200;
    int gmres_max_iterations = 20000;
    // A merit increase sustained this many consecutive steps aborts.
    int stagnation_window = 5;
    McpMethod method = McpMethod::SemismoothFischerBurmeister;
};

struct McpResult {
    FieldSolution solution;
    SolveReport report;  // residual_history carries the merit per iterate
    double complementarity_residual = 0.0;
};

// Scalar Fischer-Burmeister row for state v with residual f in [lo, hi]:
// returns the row value and the generalized-Jacobian weights (d_e, d_j).
struct FbRow {
    double value;
    double d_identity;
    double d_jacobian;
};
FbRow fb_row(double v, double f, double lo, double hi);

McpResult semismooth_newton_mcp(Assembler& assembler, const BoundsVector& bounds,
                                const FieldSolution& initial,
                                const SemismoothOptions& options = {});

}  // namespace vidarcy

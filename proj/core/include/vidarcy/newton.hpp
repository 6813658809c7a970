#pragma once

#include <vector>

#include "vidarcy/assembly.hpp"

namespace vidarcy {

/// @file newton.hpp
/// Full-step Newton iteration on the unconstrained mixed system.  Each step
/// solves J delta = -F with right-preconditioned GMRES behind the block
/// Schur-complement preconditioner, then updates the state in place.

struct NewtonOptions {
    double atol = 0.0;   // absolute residual target
    double rtol = 1e-8;  // relative to the initial residual
    int max_iterations = 50;
    // Cap on the inner linear tolerance; negative selects 1e-7.  Each step
    // additionally tightens the tolerance to a tenth of what would finish the
    // nonlinear iteration outright, so an affine residual converges in one
    // Newton step whenever the linear solver can deliver it.
    double linear_rtol = -1.0;
    int gmres_restart = 200;
    int gmres_max_iterations = 20000;

    double effective_linear_rtol() const { return linear_rtol >= 0.0 ? linear_rtol : 1e-7; }
};

struct SolveReport {
    bool converged = false;
    int snes_iterations = 0;        // nonlinear steps taken
    long long ksp_iterations = 0;   // cumulative linear iterations
    double wall_seconds = 0.0;
    double dofs_per_second = 0.0;   // total dofs / wall_seconds
    // Bound violations of the resulting pressure field; -1 until a caller
    // holding the bounds fills them in (the pipeline does).
    long long violation_count = -1;
    double violation_percent = 0.0;
    std::vector<double> residual_history;  // ||F|| per iterate, starts at F0

    double initial_residual() const {
        return residual_history.empty() ? 0.0 : residual_history.front();
    }
    double final_residual() const {
        return residual_history.empty() ? 0.0 : residual_history.back();
    }
};

struct NewtonResult {
    FieldSolution solution;
    SolveReport report;
};

// Iterates from `initial` (Dirichlet values are projected onto the state
// first) until ||F|| <= max(atol, rtol * ||F0||) or max_iterations is
// exhausted; the report then carries converged = false and the full residual
// history.  A failed linear solve throws.
NewtonResult newton_solve(Assembler& assembler, const FieldSolution& initial,
                          const NewtonOptions& options = {});

// Convenience entry points starting from the zero state.
NewtonResult newton_solve(Assembler& assembler, const NewtonOptions& options = {});
NewtonResult newton_solve(const ProblemSpec& problem, Formulation formulation,
                          const NewtonOptions& options = {}, int n_threads = 1);

}  // namespace vidarcy

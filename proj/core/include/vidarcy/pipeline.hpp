#pragma once

#include "vidarcy/assembly.hpp"
#include "vidarcy/bounds.hpp"
#include "vidarcy/newton.hpp"
#include "vidarcy/semismooth.hpp"

namespace vidarcy {

// Two-phase report mirroring the "unconstrained | VI | total" layout used by
// the runners.  When the unconstrained solution is already feasible the VI
// phase is skipped and its report stays zeroed.
struct PipelineReport {
    SolveReport newton;
    SolveReport vi;
    bool vi_ran = false;

    ViolationSummary violations_before;
    ViolationSummary violations_after;

    // Finite bound values actually enforced (min lower / max upper over the
    // pressure dofs); +-inf when a side is open everywhere.
    double pressure_lo = 0.0;
    double pressure_hi = 0.0;

    double complementarity_residual = 0.0;
    double initial_residual_norm = 0.0;
    double total_wall_seconds = 0.0;

    int total_snes() const { return newton.snes_iterations + vi.snes_iterations; }
    long long total_ksp() const { return newton.ksp_iterations + vi.ksp_iterations; }
    double total_dofs_per_second(int n_dofs) const {
        return total_wall_seconds > 0.0 ? n_dofs / total_wall_seconds : 0.0;
    }
};

struct PipelineResult {
    FieldSolution solution;       // final (complementarity-feasible) state
    FieldSolution unconstrained;  // phase-1 state, kept for difference fields
    PipelineReport report;
};

// Solve unconstrained, detect bound violations, and run the complementarity
// solve from the unconstrained state only when violations exist.  With zero
// violations the returned solution is the unconstrained one, bit for bit.
PipelineResult vi_pipeline(Assembler& assembler, const BoundsVector& bounds,
                           const NewtonOptions& newton_options = {},
                           const SemismoothOptions& mcp_options = {});

// Same, with bounds derived from the boundary data and source sign.
PipelineResult vi_pipeline(Assembler& assembler, const NewtonOptions& newton_options = {},
                           const SemismoothOptions& mcp_options = {});

PipelineResult vi_pipeline(const ProblemSpec& problem, Formulation formulation,
                           const NewtonOptions& newton_options = {},
                           const SemismoothOptions& mcp_options = {}, int n_threads = 1);

}  // namespace vidarcy

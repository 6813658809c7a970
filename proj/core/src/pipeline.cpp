#include "vidarcy/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vidarcy {

namespace {

// Representative enforced bounds for the report: tightest finite value on
// each side, or +-inf when every dof is open on that side.
void reported_bounds(const BoundsVector& bounds, double& lo, double& hi) {
    const double inf = std::numeric_limits<double>::infinity();
    lo = inf;
    hi = -inf;
    for (int i = 0; i < bounds.n_pressure(); ++i) {
        const double l = bounds.pressure_lo(i);
        const double h = bounds.pressure_hi(i);
        if (std::isfinite(l)) lo = std::min(lo, l);
        if (std::isfinite(h)) hi = std::max(hi, h);
    }
    if (lo == inf) lo = -inf;
    if (hi == -inf) hi = inf;
}

// Phase-1 initial iterate: the zero state.  The boundary-data rows then
// dominate the initial residual, so the default relative tolerance demands
// an absolute accuracy proportional to the problem's pressure scale instead
// of chasing the assembly rounding floor.
FieldSolution zero_state(const Assembler& assembler) {
    FieldSolution s;
    s.formulation = assembler.formulation();
    s.u.assign(assembler.n_velocity_dofs(), 0.0);
    s.p.assign(assembler.n_pressure_dofs(), 0.0);
    return s;
}

}  // namespace

PipelineResult vi_pipeline(Assembler& assembler, const BoundsVector& bounds,
                           const NewtonOptions& newton_options,
                           const SemismoothOptions& mcp_options) {
    const auto t0 = std::chrono::steady_clock::now();

    PipelineResult out;
    reported_bounds(bounds, out.report.pressure_lo, out.report.pressure_hi);

    NewtonResult unconstrained =
        newton_solve(assembler, zero_state(assembler), newton_options);
    if (!unconstrained.report.converged)
        throw std::runtime_error("unconstrained solve did not converge in " +
                                 std::to_string(newton_options.max_iterations) + " iterations");
    out.report.newton = unconstrained.report;
    out.report.initial_residual_norm = unconstrained.report.initial_residual();

    out.report.violations_before = detect_violations(unconstrained.solution.p, bounds);
    out.report.newton.violation_count = out.report.violations_before.count;
    out.report.newton.violation_percent = out.report.violations_before.percent;
    out.unconstrained = unconstrained.solution;

    if (out.report.violations_before.count > 0) {
        out.report.vi_ran = true;
        McpResult vi = semismooth_newton_mcp(assembler, bounds, unconstrained.solution,
                                             mcp_options);
        if (!vi.report.converged)
            throw std::runtime_error("complementarity solve did not converge in " +
                                     std::to_string(mcp_options.max_iterations) + " iterations");
        out.solution = std::move(vi.solution);
        out.report.vi = vi.report;
        out.report.complementarity_residual = vi.complementarity_residual;
    } else {
        // Feasible already: hand the unconstrained state through untouched.
        out.solution = std::move(unconstrained.solution);
        out.report.vi.converged = true;
        BlockSystem sys = assembler.make_system();
        assembler.assemble(out.solution.u, out.solution.p, sys, /*with_jacobian=*/false);
        std::vector<double> v(out.solution.u);
        v.insert(v.end(), out.solution.p.begin(), out.solution.p.end());
        out.report.complementarity_residual = complementarity_residual(sys.residual(), v, bounds);
    }

    out.report.violations_after = detect_violations(out.solution.p, bounds);
    out.report.vi.violation_count = out.report.violations_after.count;
    out.report.vi.violation_percent = out.report.violations_after.percent;

    const auto t1 = std::chrono::steady_clock::now();
    out.report.total_wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

PipelineResult vi_pipeline(Assembler& assembler, const NewtonOptions& newton_options,
                           const SemismoothOptions& mcp_options) {
    const BoundsVector bounds =
        compute_bounds(assembler.problem(), assembler.velocity_dofs(), assembler.pressure_dofs());
    return vi_pipeline(assembler, bounds, newton_options, mcp_options);
}

PipelineResult vi_pipeline(const ProblemSpec& problem, Formulation formulation,
                           const NewtonOptions& newton_options,
                           const SemismoothOptions& mcp_options, int n_threads) {
    Assembler assembler(problem, formulation, n_threads);
    return vi_pipeline(assembler, newton_options, mcp_options);
}

}  // namespace vidarcy

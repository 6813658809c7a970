#include "vidarcy/newton.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "vidarcy/report.hpp"
#include "vidarcy/schur.hpp"

namespace vidarcy {

NewtonResult newton_solve(Assembler& assembler, const FieldSolution& initial,
                          const NewtonOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();

    NewtonResult out;
    out.solution = initial;
    if (out.solution.formulation != assembler.formulation())
        throw std::invalid_argument("initial state was built for the other formulation");
    if (static_cast<int>(out.solution.u.size()) != assembler.n_velocity_dofs() ||
        static_cast<int>(out.solution.p.size()) != assembler.n_pressure_dofs())
        throw std::invalid_argument("initial state does not match the dof maps");

    assembler.project_dirichlet(out.solution.u, out.solution.p);

    BlockSystem sys = assembler.make_system();
    assembler.assemble(out.solution.u, out.solution.p, sys);

    double rnorm = sys.residual_norm();
    out.report.residual_history.push_back(rnorm);
    const double target = std::max(options.atol, options.rtol * rnorm);
    const double linear_cap = options.effective_linear_rtol();

    const int n = sys.n_total();
    std::vector<double> rhs(n), delta(n);
    while (rnorm > target && out.report.snes_iterations < options.max_iterations) {
        const std::vector<double> f = sys.residual();
        for (int i = 0; i < n; ++i) rhs[i] = -f[i];
        std::fill(delta.begin(), delta.end(), 0.0);

        // Tight enough to finish the outer iteration in this step when the
        // linear solver can reach it.
        const double eta =
            std::min(linear_cap, std::max(0.1 * target / rnorm, 1e-12));
        const GmresResult lin = solve_block_system(sys, rhs, delta, eta,
                                                   options.gmres_max_iterations,
                                                   options.gmres_restart);
        out.report.ksp_iterations += lin.iterations;
        // A solve that missed its tolerance but still contracted the residual
        // is a usable inexact step; only a no-progress solve is fatal.
        if (!lin.converged && !(lin.relative_residual < 0.5))
            throw std::runtime_error(
                "linear solve failed at Newton iteration " +
                std::to_string(out.report.snes_iterations + 1) + " (relative residual " +
                format_full(lin.relative_residual) +
                (lin.stagnated ? ", stagnated)" : ", iteration budget exhausted)"));

        for (int i = 0; i < assembler.n_velocity_dofs(); ++i) out.solution.u[i] += delta[i];
        for (int i = 0; i < assembler.n_pressure_dofs(); ++i)
            out.solution.p[i] += delta[assembler.n_velocity_dofs() + i];

        assembler.assemble(out.solution.u, out.solution.p, sys);
        rnorm = sys.residual_norm();
        out.report.residual_history.push_back(rnorm);
        ++out.report.snes_iterations;
    }

    out.report.converged = rnorm <= target;
    const auto t1 = std::chrono::steady_clock::now();
    out.report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (out.report.wall_seconds > 0.0)
        out.report.dofs_per_second = n / out.report.wall_seconds;
    return out;
}

NewtonResult newton_solve(Assembler& assembler, const NewtonOptions& options) {
    FieldSolution zero;
    zero.formulation = assembler.formulation();
    zero.u.assign(assembler.n_velocity_dofs(), 0.0);
    zero.p.assign(assembler.n_pressure_dofs(), 0.0);
    return newton_solve(assembler, zero, options);
}

NewtonResult newton_solve(const ProblemSpec& problem, Formulation formulation,
                          const NewtonOptions& options, int n_threads) {
    Assembler assembler(problem, formulation, n_threads);
    return newton_solve(assembler, options);
}

}  // namespace vidarcy

#include "vidarcy/semismooth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vidarcy/report.hpp"
#include "vidarcy/schur.hpp"

namespace vidarcy {

FbRow fb_row(double v, double f, double lo, double hi) {
    const bool has_lo = std::isfinite(lo);
    const bool has_hi = std::isfinite(hi);
    if (!has_lo && !has_hi) return {f, 0.0, 1.0};

    if (has_lo && !has_hi) {
        const double a = v - lo, b = f;
        const double r = std::hypot(a, b);
        if (r == 0.0) return {0.0, 0.0, -1.0};  // kink: inactive-side limit
        return {r - a - b, a / r - 1.0, b / r - 1.0};
    }
    if (!has_lo) {
        // Mirrored pair (hi - v, -f), row negated to keep the inactive limit
        // at -J like the lower-bound branch.
        const double a = hi - v, b = -f;
        const double r = std::hypot(a, b);
        if (r == 0.0) return {0.0, 0.0, -1.0};
        return {a + b - r, a / r - 1.0, b / r - 1.0};
    }

    // Both bounds: outer pair (v - lo, inner), inner pair (hi - v, -f).
    const double a2 = hi - v, b2 = -f;
    const double r2 = std::hypot(a2, b2);
    double g, pa2, pb2;
    if (r2 == 0.0) {
        g = 0.0;
        pa2 = 0.0;
        pb2 = -1.0;
    } else {
        g = r2 - a2 - b2;
        pa2 = a2 / r2 - 1.0;
        pb2 = b2 / r2 - 1.0;
    }
    const double a1 = v - lo;
    const double r1 = std::hypot(a1, g);
    if (r1 == 0.0) return {0.0, pa2, pb2};  // outer kink limit: p1a = 0, p1g = -1
    const double p1a = a1 / r1 - 1.0;
    const double p1g = g / r1 - 1.0;
    return {r1 - a1 - g, p1a - p1g * pa2, -p1g * pb2};
}

namespace {

// Fills Phi and the generalized-Jacobian weights for the whole state.
double evaluate_fb_system(const std::vector<double>& v, const std::vector<double>& f,
                          const BoundsVector& bounds, std::vector<double>& phi,
                          std::vector<double>& d_e, std::vector<double>& d_j) {
    double sq = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const FbRow row = fb_row(v[i], f[i], bounds.lo[i], bounds.hi[i]);
        phi[i] = row.value;
        d_e[i] = row.d_identity;
        d_j[i] = row.d_jacobian;
        sq += row.value * row.value;
    }
    return std::sqrt(sq);
}

}  // namespace

McpResult semismooth_newton_mcp(Assembler& assembler, const BoundsVector& bounds,
                                const FieldSolution& initial, const SemismoothOptions& options) {
    if (options.method != McpMethod::SemismoothFischerBurmeister)
        throw std::invalid_argument("unknown complementarity method");
    const int n_u = assembler.n_velocity_dofs();
    const int n_p = assembler.n_pressure_dofs();
    const int n = n_u + n_p;
    if (bounds.n_velocity != n_u || bounds.n_total() != n)
        throw std::invalid_argument("bounds do not match the dof maps");
    if (initial.formulation != assembler.formulation() ||
        static_cast<int>(initial.u.size()) != n_u || static_cast<int>(initial.p.size()) != n_p)
        throw std::invalid_argument("initial state does not match the dof maps");

    const auto t0 = std::chrono::steady_clock::now();

    McpResult out;
    out.solution = initial;
    assembler.project_dirichlet(out.solution.u, out.solution.p);

    std::vector<double> v(n);
    const auto gather = [&] {
        std::copy(out.solution.u.begin(), out.solution.u.end(), v.begin());
        std::copy(out.solution.p.begin(), out.solution.p.end(), v.begin() + n_u);
    };
    const auto scatter = [&] {
        std::copy(v.begin(), v.begin() + n_u, out.solution.u.begin());
        std::copy(v.begin() + n_u, v.end(), out.solution.p.begin());
    };
    gather();
    bounds.project(v);
    scatter();

    BlockSystem sys = assembler.make_system();
    assembler.assemble(out.solution.u, out.solution.p, sys);
    std::vector<double> f = sys.residual();

    std::vector<double> phi(n), d_e(n), d_j(n);
    double merit = evaluate_fb_system(v, f, bounds, phi, d_e, d_j);
    out.report.residual_history.push_back(merit);
    const double target = options.atol >= 0.0 ? options.atol : 1e-8 * merit;

    std::vector<double> rhs(n), delta(n);
    int increase_streak = 0;
    bool step_converged = false;
    while (merit > target && !step_converged &&
           out.report.snes_iterations < options.max_iterations) {
        // Generalized Jacobian H: row n is d_e(n) e_n + d_j(n) J_n.  The
        // block layout survives row scaling, so the same Schur-complement
        // preconditioner applies.
        BlockSystem h = sys;
        for (int i = 0; i < n_u; ++i) {
            if (d_j[i] != 1.0) {
                h.Juu.scale_row(i, d_j[i]);
                h.Jup.scale_row(i, d_j[i]);
            }
            if (d_e[i] != 0.0) h.Juu.add(i, i, d_e[i]);
        }
        for (int i = 0; i < n_p; ++i) {
            if (d_j[n_u + i] != 1.0) {
                h.Jpu.scale_row(i, d_j[n_u + i]);
                h.Jpp.scale_row(i, d_j[n_u + i]);
            }
            if (d_e[n_u + i] != 0.0) h.Jpp.add(i, i, d_e[n_u + i]);
        }

        for (int i = 0; i < n; ++i) rhs[i] = -phi[i];
        std::fill(delta.begin(), delta.end(), 0.0);
        const double eta =
            std::min(options.linear_rtol, std::max(0.1 * target / merit, 1e-12));
        const GmresResult lin = solve_block_system(h, rhs, delta, eta,
                                                   options.gmres_max_iterations,
                                                   options.gmres_restart);
        out.report.ksp_iterations += lin.iterations;
        // Inexact steps that still contract the linear residual are usable;
        // only a no-progress solve is fatal.
        if (!lin.converged && !(lin.relative_residual < 0.5))
            throw std::runtime_error(
                "linear solve failed at semismooth iteration " +
                std::to_string(out.report.snes_iterations + 1) + " (relative residual " +
                format_full(lin.relative_residual) +
                (lin.stagnated ? ", stagnated)" : ", iteration budget exhausted)"));

        // Backtracking on the FB merit.  Near a degenerate active set the
        // generalized Jacobian can be ill-conditioned enough that the full
        // step leaves the basin and the iteration cycles; accept the first
        // fraction with sufficient decrease, or the best trial seen.
        const std::vector<double> base = v;
        double next = 0.0;
        double best_step = 1.0, best_merit = std::numeric_limits<double>::infinity();
        double step = 1.0;
        for (int ls = 0;; ++ls) {
            for (int i = 0; i < n; ++i) v[i] = base[i] + step * delta[i];
            bounds.project(v);
            scatter();
            assembler.assemble(out.solution.u, out.solution.p, sys);
            f = sys.residual();
            next = evaluate_fb_system(v, f, bounds, phi, d_e, d_j);
            if (next < best_merit) {
                best_merit = next;
                best_step = step;
            }
            if (next <= (1.0 - 1e-4 * step) * merit || ls >= 30) break;
            step *= 0.5;
        }
        if (next != best_merit) {
            for (int i = 0; i < n; ++i) v[i] = base[i] + best_step * delta[i];
            bounds.project(v);
            scatter();
            assembler.assemble(out.solution.u, out.solution.p, sys);
            f = sys.residual();
            next = evaluate_fb_system(v, f, bounds, phi, d_e, d_j);
        }
        out.report.residual_history.push_back(next);
        increase_streak = next > merit ? increase_streak + 1 : 0;
        merit = next;
        ++out.report.snes_iterations;
        if (increase_streak >= options.stagnation_window)
            throw std::runtime_error("semismooth iteration stagnated: merit increased over " +
                                     std::to_string(options.stagnation_window) +
                                     " consecutive steps");

        double snorm = 0.0, vnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            const double s = v[i] - base[i];
            snorm += s * s;
            vnorm += v[i] * v[i];
        }
        step_converged = std::sqrt(snorm) <= options.stol * std::max(std::sqrt(vnorm), 1.0);
    }

    out.report.converged = merit <= target || step_converged;
    out.complementarity_residual = complementarity_residual(f, v, bounds);
    const auto t1 = std::chrono::steady_clock::now();
    out.report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (out.report.wall_seconds > 0.0) out.report.dofs_per_second = n / out.report.wall_seconds;
    return out;
}

}  // namespace vidarcy

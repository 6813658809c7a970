#pragma once

#include <vector>

#include "vidarcy/block_system.hpp"
#include "vidarcy/problems.hpp"
#include "vidarcy/spaces.hpp"

namespace vidarcy {

/// @file assembly.hpp
/// Residual and Jacobian assembly for both formulations.
///
/// The facet-flux formulation integrates its forms with a degree-2 rule, the
/// nodal one with degree 3.  Sparsity patterns, scatter indices, cell geometry
/// and the state-independent boundary pressure load are all built once in the
/// constructor; assemble() only rewrites values, so Newton iterations reuse
/// every piece of structure.
///
/// Constrained dofs keep their rows: the row becomes an identity row with
/// residual (state - value) and the matching columns are zeroed, so once the
/// state satisfies its constraints (project_dirichlet) Newton updates leave
/// them untouched and block symmetry survives constraint application.
///
/// Assembly is cell-parallel.  Each thread accumulates into a private value
/// buffer over a contiguous ascending cell range and the buffers are merged
/// in thread order, which reproduces the serial per-entry summation order
/// exactly; results do not depend on the thread count.
class Assembler {
  public:
    Assembler(const ProblemSpec& problem, Formulation formulation, int n_threads = 1);

    // Matrices with the cached symbolic pattern, values zeroed.
    BlockSystem make_system() const;

    // Writes F(u, p) into sys and, unless with_jacobian is false, J(u, p).
    void assemble(const std::vector<double>& u, const std::vector<double>& p, BlockSystem& sys,
                  bool with_jacobian = true);

    // Overwrites constrained entries of the state with their boundary values.
    void project_dirichlet(std::vector<double>& u, std::vector<double>& p) const;

    const ProblemSpec& problem() const { return *problem_; }
    const Mesh& mesh() const { return *problem_->mesh; }
    Formulation formulation() const { return formulation_; }
    const DofMap& velocity_dofs() const { return u_dofs_; }
    const DofMap& pressure_dofs() const { return p_dofs_; }
    int n_velocity_dofs() const { return u_dofs_.n_dofs; }
    int n_pressure_dofs() const { return p_dofs_.n_dofs; }

    void set_threads(int n) { n_threads_ = n < 1 ? 1 : n; }
    int threads() const { return n_threads_; }

    double last_assembly_seconds() const { return last_seconds_; }
    double total_assembly_seconds() const { return total_seconds_; }

  private:
    struct Sink {
        double* uu;
        double* up;
        double* pu;
        double* pp;
        double* fu;
        double* fp;
    };
    struct Buffers {
        std::vector<double> uu, up, pu, pp, fu, fp;
    };

    void build_dofmaps();
    void build_patterns();
    void build_scatter();
    void build_boundary_load();
    void cell_range_rt0(int begin, int end, const double* u, const double* p, bool with_jacobian,
                        const Sink& sink) const;
    void cell_range_vms(int begin, int end, const double* u, const double* p, bool with_jacobian,
                        const Sink& sink) const;
    void apply_constraints(const std::vector<double>& u, const std::vector<double>& p,
                           BlockSystem& sys, bool with_jacobian) const;

    const ProblemSpec* problem_;
    Formulation formulation_;
    int n_threads_;

    DofMap u_dofs_, p_dofs_;
    std::vector<CellGeometry> geometry_;
    const QuadratureRule* rule_;

    SparseMatrix proto_uu_, proto_up_, proto_pu_, proto_pp_;
    // Value-array positions of each cell's local block, row-major.
    std::vector<int> pos_uu_, pos_up_, pos_pu_, pos_pp_;
    int n_u_loc_, n_p_loc_;

    std::vector<double> boundary_fu_;
    std::vector<Buffers> buffers_;

    double last_seconds_ = 0.0;
    double total_seconds_ = 0.0;
};

// One-shot assembly of the full block system at the given state.
BlockSystem assemble_rt0(const ProblemSpec& problem, const FieldSolution& state);
BlockSystem assemble_vms(const ProblemSpec& problem, const FieldSolution& state);

struct L2Errors {
    double velocity = 0.0;
    double pressure = 0.0;
};

// L2 errors of a discrete solution against the problem's exact fields,
// integrated with a degree-5 rule; throws when no exact solution is set.
L2Errors l2_errors(const ProblemSpec& problem, const FieldSolution& solution);

}  // namespace vidarcy

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vidarcy/mesh.hpp"
#include "vidarcy/quadrature.hpp"

namespace vidarcy {

/// @file spaces.hpp
/// Discrete spaces for the two mixed formulations:
///   RT0  - lowest-order facet-flux velocity + piecewise-constant pressure.
///          A velocity dof is the net flux through its facet measured along
///          the facet's global reference direction, so the same dof serves
///          both adjacent cells and normal continuity is built in.
///   VMS  - equal-order nodal spaces: P1 vector velocity + P1 pressure.

enum class Formulation { RT0, VMS };

enum class SpaceKind { RT0Flux, P0Pressure, P1Pressure, P1VectorVelocity };

struct DofMap {
    SpaceKind kind;
    int dim = 2;
    int n_dofs = 0;
    std::vector<std::uint8_t> is_dirichlet;
    std::vector<double> dirichlet_value;
};

DofMap make_dofmap(const Mesh& mesh, SpaceKind kind);

// Dofs of `cell` in local order: RT0Flux/P0 use local facet/cell numbering,
// nodal spaces use local vertices (vector dofs component-major per vertex:
// vertex*dim + component).
int cell_dofs(const Mesh& mesh, const DofMap& dofmap, int cell, int* out);

// Geometry bundle reused across quadrature points of one cell.
struct CellGeometry {
    int dim;
    std::array<Vec3, 4> vertex;
    double measure;
    std::array<double, 4> facet_measure;   // of the facet opposite each vertex
    std::array<int, 4> orientation;        // global orientation sign per local facet
    std::array<Vec3, 4> grad_bary;         // constant gradients of barycentric functions
};

CellGeometry cell_geometry(const Mesh& mesh, int cell);

Vec3 physical_point(const CellGeometry& g, const std::array<double, 4>& bary);

// RT0 basis attached to local facet l evaluated at a physical point:
//   value_l = sign_l / (dim |T|) * (x - X_l),  div_l = sign_l / |T|.
// This is the contravariant Piola image of the reference basis with the global
// orientation sign applied; it carries unit net flux across its own facet
// (normal trace sign_l / |F_l| pointwise) and zero flux across the others,
// so coefficients are signed facet fluxes.
void eval_rt0_basis(const CellGeometry& g, const Vec3& x, Vec3* values, double* divs);

// Nodal P1 basis (barycentric) values and constant gradients.
void eval_p1_basis(const CellGeometry& g, const std::array<double, 4>& bary, double* values,
                   Vec3* grads);

// Velocity Dirichlet data u.n = normal_value on a tagged boundary.
//  RT0Flux: the facet dof is set to the integral of normal_value over the
//           facet, signed by the facet's global orientation.
//  P1VectorVelocity: supported only on axis-aligned boundaries; constrains the
//           normal nodal component at every vertex of the tagged facets.
void apply_velocity_dirichlet(const Mesh& mesh, DofMap& dofmap, int tag,
                              const std::function<double(const Vec3&)>& normal_value);

// Nodal pressure Dirichlet data for P1Pressure.  P0 pressure takes its
// boundary data weakly through the residual's boundary term, never here.
void apply_pressure_dirichlet(const Mesh& mesh, DofMap& dofmap, int tag,
                              const std::function<double(const Vec3&)>& value);

void pin_dof(DofMap& dofmap, int dof, double value);

// Discrete solution of one formulation: velocity and pressure coefficients.
struct FieldSolution {
    Formulation formulation = Formulation::RT0;
    std::vector<double> u;
    std::vector<double> p;
};

// Pointwise field evaluation inside a cell (bary = barycentric coordinates).
Vec3 evaluate_velocity(const Mesh& mesh, const DofMap& udofs, const FieldSolution& s, int cell,
                       const std::array<double, 4>& bary);
double evaluate_pressure(const Mesh& mesh, const DofMap& pdofs, const FieldSolution& s, int cell,
                         const std::array<double, 4>& bary);

}  // namespace vidarcy

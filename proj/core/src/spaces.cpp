#include "vidarcy/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace vidarcy {

DofMap make_dofmap(const Mesh& mesh, SpaceKind kind) {
    DofMap d;
    d.kind = kind;
    d.dim = mesh.dim;
    switch (kind) {
        case SpaceKind::RT0Flux: d.n_dofs = mesh.n_facets(); break;
        case SpaceKind::P0Pressure: d.n_dofs = mesh.n_cells(); break;
        case SpaceKind::P1Pressure: d.n_dofs = mesh.n_vertices(); break;
        case SpaceKind::P1VectorVelocity: d.n_dofs = mesh.dim * mesh.n_vertices(); break;
    }
    d.is_dirichlet.assign(d.n_dofs, 0);
    d.dirichlet_value.assign(d.n_dofs, 0.0);
    return d;
}

int cell_dofs(const Mesh& mesh, const DofMap& dofmap, int cell, int* out) {
    const int nvc = mesh.vertices_per_cell();
    switch (dofmap.kind) {
        case SpaceKind::RT0Flux:
            for (int l = 0; l < nvc; ++l) out[l] = mesh.cell_facets[cell][l];
            return nvc;
        case SpaceKind::P0Pressure:
            out[0] = cell;
            return 1;
        case SpaceKind::P1Pressure:
            for (int l = 0; l < nvc; ++l) out[l] = mesh.cells[cell][l];
            return nvc;
        case SpaceKind::P1VectorVelocity: {
            int k = 0;
            for (int l = 0; l < nvc; ++l)
                for (int c = 0; c < mesh.dim; ++c) out[k++] = mesh.cells[cell][l] * mesh.dim + c;
            return k;
        }
    }
    return 0;
}

CellGeometry cell_geometry(const Mesh& mesh, int cell) {
    CellGeometry g;
    g.dim = mesh.dim;
    const int nvc = mesh.vertices_per_cell();
    for (int l = 0; l < nvc; ++l) g.vertex[l] = mesh.vertices[mesh.cells[cell][l]];
    g.measure = mesh.cell_measure(cell);
    if (!(g.measure > 0.0)) throw std::runtime_error("cell with nonpositive measure");
    for (int l = 0; l < nvc; ++l) {
        const int f = mesh.cell_facets[cell][l];
        g.facet_measure[l] = mesh.facet_measure(f);
        g.orientation[l] = facet_orientation(mesh, cell, l);
        // Outward normal of this cell on local facet l; the stored normal
        // points out of the facet's first adjacent cell.
        Vec3 n = mesh.facet_outward_normal(f);
        if (mesh.facets[f].cells[0] != cell) n = n * -1.0;
        g.grad_bary[l] = n * (-g.facet_measure[l] / (mesh.dim * g.measure));
    }
    return g;
}

Vec3 physical_point(const CellGeometry& g, const std::array<double, 4>& bary) {
    Vec3 x;
    for (int l = 0; l <= g.dim; ++l) x += g.vertex[l] * bary[l];
    return x;
}

void eval_rt0_basis(const CellGeometry& g, const Vec3& x, Vec3* values, double* divs) {
    for (int l = 0; l <= g.dim; ++l) {
        const double c = g.orientation[l] / (g.dim * g.measure);
        values[l] = (x - g.vertex[l]) * c;
        divs[l] = g.orientation[l] / g.measure;
    }
}

void eval_p1_basis(const CellGeometry& g, const std::array<double, 4>& bary, double* values,
                   Vec3* grads) {
    for (int l = 0; l <= g.dim; ++l) {
        values[l] = bary[l];
        grads[l] = g.grad_bary[l];
    }
}

void apply_velocity_dirichlet(const Mesh& mesh, DofMap& dofmap, int tag,
                              const std::function<double(const Vec3&)>& normal_value) {
    if (dofmap.kind != SpaceKind::RT0Flux && dofmap.kind != SpaceKind::P1VectorVelocity)
        throw std::invalid_argument("velocity Dirichlet data needs a velocity dof map");

    for (int f = 0; f < mesh.n_facets(); ++f) {
        if (mesh.facets[f].tag != tag) continue;
        if (mesh.facets[f].cells[1] != -1)
            throw std::invalid_argument("velocity Dirichlet tag matches an interior facet");

        if (dofmap.kind == SpaceKind::RT0Flux) {
            const int cell = mesh.facets[f].cells[0];
            const int lf = mesh.facets[f].local_index[0];
            const int sign = facet_orientation(mesh, cell, lf);
            const FacetQuadrature& fq = facet_quadrature(mesh.dim, 5);
            const auto xs = mesh.facet_vertex_coords(f);
            double flux = 0.0;
            for (size_t q = 0; q < fq.weights.size(); ++q) {
                Vec3 x;
                for (int v = 0; v < mesh.dim; ++v) x += xs[v] * fq.points[q][v];
                flux += fq.weights[q] * normal_value(x);
            }
            flux *= mesh.facet_measure(f) * sign;
            dofmap.is_dirichlet[f] = 1;
            dofmap.dirichlet_value[f] = flux;
        } else {
            const Vec3 n = mesh.facet_outward_normal(f);
            int axis = -1;
            for (int k = 0; k < mesh.dim; ++k)
                if (std::abs(n[k]) > 1.0 - 1e-9) axis = k;
            if (axis < 0)
                throw std::invalid_argument(
                    "unsupported constraint: nodal normal-velocity data requires an "
                    "axis-aligned boundary");
            const double nk = (n[axis] > 0.0) ? 1.0 : -1.0;
            for (int v = 0; v < mesh.dim; ++v) {
                const int vertex = mesh.facets[f].vertices[v];
                const int dof = vertex * mesh.dim + axis;
                dofmap.is_dirichlet[dof] = 1;
                dofmap.dirichlet_value[dof] = nk * normal_value(mesh.vertices[vertex]);
            }
        }
    }
}

void apply_pressure_dirichlet(const Mesh& mesh, DofMap& dofmap, int tag,
                              const std::function<double(const Vec3&)>& value) {
    if (dofmap.kind == SpaceKind::P0Pressure)
        throw std::invalid_argument(
            "piecewise-constant pressure takes boundary data weakly, not as dof constraints");
    if (dofmap.kind != SpaceKind::P1Pressure)
        throw std::invalid_argument("pressure Dirichlet data needs a pressure dof map");

    for (int f = 0; f < mesh.n_facets(); ++f) {
        if (mesh.facets[f].tag != tag) continue;
        if (mesh.facets[f].cells[1] != -1)
            throw std::invalid_argument("pressure Dirichlet tag matches an interior facet");
        for (int v = 0; v < mesh.dim; ++v) {
            const int vertex = mesh.facets[f].vertices[v];
            dofmap.is_dirichlet[vertex] = 1;
            dofmap.dirichlet_value[vertex] = value(mesh.vertices[vertex]);
        }
    }
}

void pin_dof(DofMap& dofmap, int dof, double value) {
    if (dof < 0 || dof >= dofmap.n_dofs) throw std::invalid_argument("pin_dof: dof out of range");
    dofmap.is_dirichlet[dof] = 1;
    dofmap.dirichlet_value[dof] = value;
}

Vec3 evaluate_velocity(const Mesh& mesh, const DofMap& udofs, const FieldSolution& s, int cell,
                       const std::array<double, 4>& bary) {
    const CellGeometry g = cell_geometry(mesh, cell);
    int dofs[12];
    const int n = cell_dofs(mesh, udofs, cell, dofs);
    Vec3 out;
    if (udofs.kind == SpaceKind::RT0Flux) {
        Vec3 vals[4];
        double divs[4];
        eval_rt0_basis(g, physical_point(g, bary), vals, divs);
        for (int l = 0; l < n; ++l) out += vals[l] * s.u[dofs[l]];
    } else {
        for (int l = 0; l <= mesh.dim; ++l)
            for (int c = 0; c < mesh.dim; ++c)
                out[c] += bary[l] * s.u[dofs[l * mesh.dim + c]];
    }
    return out;
}

double evaluate_pressure(const Mesh& mesh, const DofMap& pdofs, const FieldSolution& s, int cell,
                         const std::array<double, 4>& bary) {
    if (pdofs.kind == SpaceKind::P0Pressure) return s.p[cell];
    double out = 0.0;
    for (int l = 0; l <= mesh.dim; ++l) out += bary[l] * s.p[mesh.cells[cell][l]];
    return out;
}

}  // namespace vidarcy

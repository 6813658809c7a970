#include "vidarcy/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vidarcy/quadrature.hpp"

namespace vidarcy {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double BoundsVector::pressure_scale() const {
    double s = 1.0;
    for (int i = n_velocity; i < n_total(); ++i) {
        if (std::isfinite(lo[i])) s = std::max(s, std::abs(lo[i]));
        if (std::isfinite(hi[i])) s = std::max(s, std::abs(hi[i]));
    }
    return s;
}

void BoundsVector::project(std::vector<double>& v) const {
    for (size_t i = 0; i < v.size(); ++i) v[i] = std::min(std::max(v[i], lo[i]), hi[i]);
}

BoundsVector uniform_bounds(int n_velocity, int n_pressure, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("bounds with lo > hi");
    BoundsVector b;
    b.n_velocity = n_velocity;
    b.lo.assign(n_velocity, -kInf);
    b.hi.assign(n_velocity, kInf);
    b.lo.insert(b.lo.end(), n_pressure, lo);
    b.hi.insert(b.hi.end(), n_pressure, hi);
    return b;
}

BoundsVector compute_bounds(const ProblemSpec& problem, const DofMap& velocity_dofs,
                            const DofMap& pressure_dofs) {
    const Mesh& mesh = *problem.mesh;
    if (problem.pressure_bc.empty())
        throw std::invalid_argument(
            "maximum-principle bounds need a nonempty pressure boundary");

    // Extremes of the boundary pressure, sampled at facet vertices and
    // quadrature points of every facet carrying pressure data.
    double p_min = kInf, p_max = -kInf;
    const FacetQuadrature& fq = facet_quadrature(mesh.dim, 5);
    for (int f = 0; f < mesh.n_facets(); ++f) {
        const Facet& facet = mesh.facets[f];
        if (facet.cells[1] != -1) continue;
        const auto it = problem.pressure_bc.find(facet.tag);
        if (it == problem.pressure_bc.end()) continue;
        const auto xs = mesh.facet_vertex_coords(f);
        for (int v = 0; v < mesh.dim; ++v) {
            const double pv = it->second(xs[v]);
            p_min = std::min(p_min, pv);
            p_max = std::max(p_max, pv);
        }
        for (size_t q = 0; q < fq.weights.size(); ++q) {
            Vec3 x;
            for (int v = 0; v < mesh.dim; ++v) x += xs[v] * fq.points[q][v];
            const double pq = it->second(x);
            p_min = std::min(p_min, pq);
            p_max = std::max(p_max, pq);
        }
    }
    if (!(p_min <= p_max))
        throw std::invalid_argument("no boundary facet carries the pressure tags");

    // Sign of the source over the interior quadrature points.
    bool has_positive = false, has_negative = false;
    if (problem.source) {
        const QuadratureRule& rule = simplex_quadrature(mesh.dim, 2);
        for (int c = 0; c < mesh.n_cells() && !(has_positive && has_negative); ++c) {
            const CellGeometry g = cell_geometry(mesh, c);
            for (int q = 0; q < rule.size(); ++q) {
                const double f = problem.source(physical_point(g, rule.points[q]));
                has_positive = has_positive || f > 0.0;
                has_negative = has_negative || f < 0.0;
            }
        }
    }
    if (has_positive && has_negative)
        throw std::invalid_argument(
            "source changes sign, so no one-sided maximum principle applies; "
            "supply explicit bounds instead");

    double lo = p_min, hi = p_max;
    if (has_positive) hi = kInf;
    if (has_negative) lo = -kInf;

    BoundsVector b = uniform_bounds(velocity_dofs.n_dofs, pressure_dofs.n_dofs, lo, hi);
    for (int i = 0; i < pressure_dofs.n_dofs; ++i) {
        if (pressure_dofs.is_dirichlet[i]) {
            b.lo[velocity_dofs.n_dofs + i] = -kInf;
            b.hi[velocity_dofs.n_dofs + i] = kInf;
        }
    }
    return b;
}

ViolationSummary detect_violations(const std::vector<double>& pressure,
                                   const BoundsVector& bounds, double tol) {
    if (static_cast<int>(pressure.size()) != bounds.n_pressure())
        throw std::invalid_argument("pressure vector does not match the bounds");
    if (tol < 0.0) tol = 1e-10 * bounds.pressure_scale();

    ViolationSummary s;
    for (size_t i = 0; i < pressure.size(); ++i) {
        const double lo = bounds.pressure_lo(static_cast<int>(i));
        const double hi = bounds.pressure_hi(static_cast<int>(i));
        if (pressure[i] < lo - tol || pressure[i] > hi + tol) ++s.count;
    }
    s.percent = pressure.empty() ? 0.0 : 100.0 * static_cast<double>(s.count) /
                                             static_cast<double>(pressure.size());
    return s;
}

double complementarity_residual(const std::vector<double>& f, const std::vector<double>& v,
                                const BoundsVector& bounds) {
    if (f.size() != v.size() || static_cast<int>(v.size()) != bounds.n_total())
        throw std::invalid_argument("complementarity check: size mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (std::isfinite(bounds.lo[i]))
            worst = std::max(worst, std::abs(std::min(v[i] - bounds.lo[i], std::max(f[i], 0.0))));
        if (std::isfinite(bounds.hi[i]))
            worst = std::max(worst, std::abs(std::min(bounds.hi[i] - v[i], std::max(-f[i], 0.0))));
    }
    return worst;
}

}  // namespace vidarcy

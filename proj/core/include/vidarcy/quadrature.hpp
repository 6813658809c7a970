#pragma once

#include <array>
#include <vector>

#include "vidarcy/geometry.hpp"

namespace vidarcy {

// Quadrature on reference simplices.  Points are barycentric coordinates
// (dim+1 entries), weights sum to the reference measure (1/2 triangle,
// 1/6 tetrahedron).  All interior-point rules: no point sits on a vertex or
// facet, so pointwise-singular coefficient fields are never sampled at their
// singularities.
struct QuadratureRule {
    int dim = 2;
    int degree = 1;  // highest total polynomial degree integrated exactly
    std::vector<std::array<double, 4>> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(weights.size()); }
};

// Smallest available rule exact for polynomials of total degree >= `degree`.
const QuadratureRule& simplex_quadrature(int dim, int degree);

// Gauss-Legendre rule on [0,1] (n = 1..6 supported).
void gauss_legendre_unit(int n, std::vector<double>& points, std::vector<double>& weights);

// Quadrature on a facet of codimension one: segment in 2D (dim = 2 mesh),
// triangle in 3D.  Points are barycentric in the facet's own vertices.
struct FacetQuadrature {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;  // sum to 1 (scale by facet measure)
};

const FacetQuadrature& facet_quadrature(int mesh_dim, int degree);

}  // namespace vidarcy

#pragma once

#include <map>

#include "vidarcy/mesh.hpp"
#include "vidarcy/physics.hpp"

namespace vidarcy {

/// @file problems.hpp
/// Complete problem statement for the mixed Darcy model with
/// pressure-dependent viscosity:
///   alpha(p) u + grad p = rho b   in the domain,
///   div u = f                     in the domain,
///   u . n = u_n on velocity-tagged boundaries, p = p0 on pressure-tagged ones.

struct ProblemSpec {
    const Mesh* mesh = nullptr;
    ViscosityModel viscosity;
    PermeabilityField permeability;
    std::function<Vec3(const Vec3&)> body_force;  // rho*b [N/m^3]; empty means zero
    std::function<double(const Vec3&)> source;    // f [1/s]; empty means zero

    std::map<int, std::function<double(const Vec3&)>> velocity_bc;  // tag -> u.n
    std::map<int, std::function<double(const Vec3&)>> pressure_bc;  // tag -> p0

    // With pure velocity boundaries the pressure is determined only up to a
    // constant; pinning fixes the pressure dof nearest the domain centroid to
    // the exact solution's value there.
    bool pin_pressure_dof = false;

    std::function<Vec3(const Vec3&)> exact_velocity;    // set for manufactured problems
    std::function<double(const Vec3&)> exact_pressure;

    // Checks that every boundary tag appearing on the mesh is covered by
    // exactly one of the two boundary maps.
    void validate() const;
};

inline constexpr double kAtmospheric = 101325.0;  // [Pa]

// --- Benchmark meshes ------------------------------------------------------

// Unit square with n x n quads split into triangles (h-convergence levels).
Mesh unit_square_mesh(int n);

// (0,100)^2 square reservoir at grid spacing h = 1 m (100 x 100 quads).
Mesh square_reservoir_mesh(int cells_per_side = 100);

// Graded annulus hierarchy (levels 1..7): (n_radial, n_angular) scale by
// sqrt(2) per level starting from (25, 53) (~1380 nodes at level 1, dof count
// roughly doubling per level).
Mesh circular_reservoir_mesh(int level);

// 100 x 100 x 50 m box; level 1 = 20 x 20 x 10 cubes (six tets each), the cube
// count per direction scales by 2^((level-1)/3).
Mesh box3d_mesh(int level);

// --- Benchmark problems ----------------------------------------------------

// Smooth manufactured solution on the unit square:
//   u = (sin(pi x) cos(pi y), -cos(pi x) sin(pi y)),  p = sin(pi x) sin(pi y),
// div u = 0 so f = 0; the body force rho*b = alpha(p) u + grad p makes the
// pair solve the model exactly.  mu0 = 1, K = I, betaB in {0, 1}, u.n = 0 on
// the whole boundary, pressure fixed up to a constant by a central pin.
ProblemSpec manufactured_problem(const Mesh& mesh, double betaB);

// Square reservoir: heterogeneous anisotropic K (tangentially dominant,
// radial permeability eps-small), atmospheric pressure on the whole boundary,
// unit injection over the patch [48,52]^2, no body force.
ProblemSpec square_reservoir_problem(const Mesh& mesh, double eps, double betaB = 1e-8);

// Circular reservoir: annulus with injection pressure 1e7 Pa on the inner
// ring, 1e5 Pa on the outer ring, constant rotated anisotropic K
// (R(theta) diag(1e-10, 1e-13) R(theta)^T), f = 0, rho*b = 0.
ProblemSpec circular_reservoir_problem(const Mesh& mesh, double betaB,
                                       double theta = kPi / 3.0);

// 3D box: atmospheric pressure on all outer surfaces except an injection
// patch [48,52]^2 on the top where p = (1 + 10 sin(pi (x-48)/4) sin(pi (y-48)/4)) atm
// (peak 11 atm at the patch center), K = diag(1e-13, 1e-13, 1e-11) m^2, f = 0.
ProblemSpec box3d_problem(const Mesh& mesh, double betaB = 1e-8);

}  // namespace vidarcy

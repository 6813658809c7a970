#include "vidarcy/problems.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace vidarcy {

void ProblemSpec::validate() const {
    if (mesh == nullptr) throw std::invalid_argument("problem has no mesh");
    std::set<int> present;
    for (const auto& f : mesh->facets)
        if (f.cells[1] == -1) {
            if (f.tag < 0) throw std::invalid_argument("boundary facet without a tag");
            present.insert(f.tag);
        }
    for (int tag : present) {
        const bool vel = velocity_bc.count(tag) > 0;
        const bool pre = pressure_bc.count(tag) > 0;
        if (vel && pre)
            throw std::invalid_argument("boundary tag " + std::to_string(tag) +
                                        " has both velocity and pressure data");
        if (!vel && !pre)
            throw std::invalid_argument("boundary tag " + std::to_string(tag) +
                                        " has no boundary data");
    }
    if (pin_pressure_dof && !exact_pressure)
        throw std::invalid_argument("pressure pinning needs an exact pressure to pin to");
}

Mesh unit_square_mesh(int n) { return generate_structured_triangles(n, n, 0.0, 0.0, 1.0, 1.0); }

Mesh square_reservoir_mesh(int cells_per_side) {
    return generate_structured_triangles(cells_per_side, cells_per_side, 0.0, 0.0, 100.0, 100.0);
}

Mesh circular_reservoir_mesh(int level) {
    if (level < 1 || level > 7) throw std::invalid_argument("circular mesh level must be 1..7");
    const double scale = std::pow(2.0, 0.5 * (level - 1));
    const int n_radial = static_cast<int>(std::lround(25 * scale));
    const int n_angular = static_cast<int>(std::lround(53 * scale));
    return generate_annulus(1.0, 100.0, n_radial, n_angular);
}

Mesh box3d_mesh(int level) {
    if (level < 1 || level > 5) throw std::invalid_argument("box mesh level must be 1..5");
    const double scale = std::pow(2.0, (level - 1) / 3.0);
    const int nx = static_cast<int>(std::lround(20 * scale));
    const int nz = static_cast<int>(std::lround(10 * scale));
    return generate_structured_tets(nx, nx, nz, 0.0, 0.0, 0.0, 100.0, 100.0, 50.0);
}

ProblemSpec manufactured_problem(const Mesh& mesh, double betaB) {
    ProblemSpec p;
    p.mesh = &mesh;
    p.viscosity = {1.0, betaB, ViscosityLaw::Linearized};
    p.permeability = isotropic_permeability(1.0);

    auto exact_u = [](const Vec3& x) -> Vec3 {
        return {std::sin(kPi * x.x) * std::cos(kPi * x.y),
                -std::cos(kPi * x.x) * std::sin(kPi * x.y), 0.0};
    };
    auto exact_p = [](const Vec3& x) {
        return std::sin(kPi * x.x) * std::sin(kPi * x.y);
    };
    auto grad_p = [](const Vec3& x) -> Vec3 {
        return {kPi * std::cos(kPi * x.x) * std::sin(kPi * x.y),
                kPi * std::sin(kPi * x.x) * std::cos(kPi * x.y), 0.0};
    };

    const ViscosityModel visc = p.viscosity;
    p.body_force = [exact_u, exact_p, grad_p, visc](const Vec3& x) -> Vec3 {
        const double mu = visc.value(exact_p(x));
        return exact_u(x) * mu + grad_p(x);
    };
    p.exact_velocity = exact_u;
    p.exact_pressure = exact_p;

    auto zero = [](const Vec3&) { return 0.0; };
    for (const auto& [name, tag] : mesh.boundary_tags) p.velocity_bc[tag] = zero;
    p.pin_pressure_dof = true;
    return p;
}

ProblemSpec square_reservoir_problem(const Mesh& mesh, double eps, double betaB) {
    ProblemSpec p;
    p.mesh = &mesh;
    p.viscosity = {1e-3, betaB, ViscosityLaw::Linearized};
    p.permeability = square_reservoir_permeability(1e-13, eps);
    p.source = [](const Vec3& x) {
        return (x.x >= 48.0 && x.x <= 52.0 && x.y >= 48.0 && x.y <= 52.0) ? 1.0 : 0.0;
    };
    auto atm = [](const Vec3&) { return kAtmospheric; };
    for (const auto& [name, tag] : mesh.boundary_tags) p.pressure_bc[tag] = atm;
    return p;
}

ProblemSpec circular_reservoir_problem(const Mesh& mesh, double betaB, double theta) {
    ProblemSpec p;
    p.mesh = &mesh;
    p.viscosity = {1e-3, betaB, ViscosityLaw::Linearized};
    p.permeability = rotated_anisotropic_permeability(theta, 1e-10, 1e-13);
    p.pressure_bc[mesh.tag_id("inner")] = [](const Vec3&) { return 1e7; };
    p.pressure_bc[mesh.tag_id("outer")] = [](const Vec3&) { return 1e5; };
    return p;
}

ProblemSpec box3d_problem(const Mesh& mesh, double betaB) {
    ProblemSpec p;
    p.mesh = &mesh;
    p.viscosity = {1e-3, betaB, ViscosityLaw::Linearized};
    p.permeability = diagonal_permeability(1e-13, 1e-13, 1e-11);

    auto atm = [](const Vec3&) { return kAtmospheric; };
    auto top = [](const Vec3& x) {
        if (x.x >= 48.0 && x.x <= 52.0 && x.y >= 48.0 && x.y <= 52.0)
            return kAtmospheric *
                   (1.0 + 10.0 * std::sin(kPi * (x.x - 48.0) / 4.0) *
                              std::sin(kPi * (x.y - 48.0) / 4.0));
        return kAtmospheric;
    };
    for (const auto& [name, tag] : mesh.boundary_tags)
        p.pressure_bc[tag] = (name == "zmax") ? std::function<double(const Vec3&)>(top)
                                              : std::function<double(const Vec3&)>(atm);
    return p;
}

}  // namespace vidarcy

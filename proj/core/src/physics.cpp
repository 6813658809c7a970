#include "vidarcy/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace vidarcy {

double ViscosityModel::value(double p) const {
    if (law == ViscosityLaw::Linearized) return mu0 * (1.0 + betaB * p);
    return mu0 * std::exp(betaB * p);
}

double ViscosityModel::checked_value(double p) const {
    const double mu = value(p);
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::runtime_error("viscosity model left its validity range (mu <= 0) at p = " +
                                 std::to_string(p));
    return mu;
}

double ViscosityModel::derivative(double p) const {
    if (law == ViscosityLaw::Linearized) return mu0 * betaB;
    return betaB * value(p);
}

PermeabilityField isotropic_permeability(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("permeability must be positive");
    PermeabilityField f;
    f.description = "isotropic";
    f.eval = [k](const Vec3&) { return Mat3::diagonal(k, k, k); };
    return f;
}

PermeabilityField diagonal_permeability(double kx, double ky, double kz) {
    if (!(kx > 0.0) || !(ky > 0.0) || !(kz > 0.0))
        throw std::invalid_argument("permeability must be positive");
    PermeabilityField f;
    f.description = "diagonal";
    f.eval = [kx, ky, kz](const Vec3&) { return Mat3::diagonal(kx, ky, kz); };
    return f;
}

PermeabilityField square_reservoir_permeability(double k0, double eps) {
    if (!(k0 > 0.0)) throw std::invalid_argument("k0 must be positive");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    PermeabilityField f;
    f.description = "square-reservoir";
    auto count = f.clamp_count;
    const double floor = k0 * 1e-12;
    f.eval = [k0, eps, floor, count](const Vec3& x) {
        Mat3 k = Mat3::identity();
        k(0, 0) = k0 * (x.y * x.y + eps * x.x * x.x);
        k(0, 1) = k(1, 0) = -k0 * (1.0 - eps) * x.x * x.y;
        k(1, 1) = k0 * (x.x * x.x + eps * x.y * x.y);
        std::array<double, 2> ev;
        std::array<Vec3, 2> evec;
        symmetric_eigen_2x2(k, ev, evec);
        if (ev[0] < floor) {
            // Rebuild from clamped eigenpairs to keep the tensor SPD.
            std::array<double, 2> clamped{std::max(ev[0], floor), std::max(ev[1], floor)};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    k(i, j) = clamped[0] * evec[0][i] * evec[0][j] +
                              clamped[1] * evec[1][i] * evec[1][j];
            count->fetch_add(1, std::memory_order_relaxed);
        }
        return k;
    };
    return f;
}

PermeabilityField rotated_anisotropic_permeability(double theta, double k_major, double k_minor) {
    if (!(k_major > 0.0) || !(k_minor > 0.0))
        throw std::invalid_argument("permeability must be positive");
    const double c = std::cos(theta), s = std::sin(theta);
    Mat3 k = Mat3::identity();
    k(0, 0) = c * c * k_major + s * s * k_minor;
    k(0, 1) = k(1, 0) = c * s * (k_major - k_minor);
    k(1, 1) = s * s * k_major + c * c * k_minor;
    PermeabilityField f;
    f.description = "rotated-anisotropic";
    f.eval = [k](const Vec3&) { return k; };
    return f;
}

Drag drag(const ViscosityModel& viscosity, const PermeabilityField& permeability, double p,
          const Vec3& x, int dim) {
    const double mu = viscosity.value(p);
    const double dmu = viscosity.derivative(p);
    const Mat3 k = permeability(x);
    const Mat3 kinv = invert_spd_block(k, dim);
    Drag d;
    d.alpha = kinv.scaled(mu);
    d.dalpha_dp = kinv.scaled(dmu);
    d.alpha_inv = k.scaled(1.0 / mu);
    return d;
}

}  // namespace vidarcy

#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>

#include "vidarcy/geometry.hpp"

namespace vidarcy {

/// @file physics.hpp
/// Pressure-dependent viscosity and the drag coefficient it induces.
///
/// The exponential law mu(p) = mu0 * exp(betaB * p) and its linearization
/// mu(p) = mu0 * (1 + betaB * p) are both available; the linearized law is the
/// default used by every benchmark preset.  The drag tensor is
/// alpha(p) = mu(p) K^-1 with d(alpha)/dp = mu'(p) K^-1.

enum class ViscosityLaw { Linearized, Exponential };

struct ViscosityModel {
    double mu0 = 1.0;    // reference viscosity at p = 0 [Pa s]
    double betaB = 0.0;  // pressure coefficient [1/Pa]
    ViscosityLaw law = ViscosityLaw::Linearized;

    // Raw law evaluation.  Outside the validity range the linearized law
    // goes nonpositive; assembly evaluates it as-is (solver iterates and
    // bound-violating states routinely visit that regime).
    double value(double p) const;
    double derivative(double p) const;  // d(mu)/dp
    // Guarded evaluation for callers that require a physically meaningful
    // viscosity; throws when the law leaves mu <= 0.
    double checked_value(double p) const;
};

// Spatially varying symmetric positive definite permeability [m^2].
struct PermeabilityField {
    std::function<Mat3(const Vec3&)> eval;
    std::string description;
    // Number of quadrature evaluations where an eigenvalue had to be clamped
    // up to the positive floor (shared across copies of the field).
    std::shared_ptr<std::atomic<long long>> clamp_count =
        std::make_shared<std::atomic<long long>>(0);

    Mat3 operator()(const Vec3& x) const { return eval(x); }
};

PermeabilityField isotropic_permeability(double k);
PermeabilityField diagonal_permeability(double kx, double ky, double kz);

// K(x, y) = k0 * [[y^2 + eps x^2, -(1 - eps) x y], [-(1 - eps) x y, x^2 + eps y^2]].
// Eigenvalues are k0 (x^2 + y^2) tangentially and k0 eps (x^2 + y^2) radially,
// so the tensor degenerates toward the origin; eigenvalues below k0 * 1e-12
// are clamped up to that floor and counted.
PermeabilityField square_reservoir_permeability(double k0, double eps);

// Constant anisotropic tensor R(theta) diag(k_major, k_minor) R(theta)^T.
PermeabilityField rotated_anisotropic_permeability(double theta, double k_major, double k_minor);

struct Drag {
    Mat3 alpha;      // mu(p) K^-1
    Mat3 dalpha_dp;  // mu'(p) K^-1
    Mat3 alpha_inv;  // K / mu(p)
};

Drag drag(const ViscosityModel& viscosity, const PermeabilityField& permeability, double p,
          const Vec3& x, int dim);

}  // namespace vidarcy

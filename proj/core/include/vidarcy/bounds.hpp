#pragma once

#include <vector>

#include "vidarcy/problems.hpp"
#include "vidarcy/spaces.hpp"

namespace vidarcy {

/// @file bounds.hpp
/// Box bounds for the mixed state vector [u; p] and the violation metrics
/// reported by every benchmark.  Velocity dofs are always unbounded; pressure
/// dofs carry the maximum-principle interval derived from the boundary data
/// and the sign of the source.

struct BoundsVector {
    int n_velocity = 0;
    std::vector<double> lo, hi;  // length n_velocity + n_pressure, +-inf when open

    int n_total() const { return static_cast<int>(lo.size()); }
    int n_pressure() const { return n_total() - n_velocity; }

    double pressure_lo(int i) const { return lo[n_velocity + i]; }
    double pressure_hi(int i) const { return hi[n_velocity + i]; }

    // max(1, largest finite pressure bound magnitude); violation and
    // feasibility tolerances are measured against this.
    double pressure_scale() const;

    // Clamps a full-length state into the box (open sides untouched).
    void project(std::vector<double>& v) const;
};

// Uniform pressure box with unbounded velocities (testing and explicit
// user-supplied bounds).
BoundsVector uniform_bounds(int n_velocity, int n_pressure, double lo, double hi);

// Maximum-principle bounds from the boundary data:
//   f identically 0:        p in [min p0, max p0]
//   f >= 0, positive spots: p in [min p0, +inf)
//   f <= 0, negative spots: p in (-inf, max p0]
// Mixed-sign sources have no one-sided principle: configuration error asking
// for explicit bounds.  Dirichlet-constrained pressure dofs stay open; their
// identity rows already fix the value.  Requires a nonempty pressure boundary.
BoundsVector compute_bounds(const ProblemSpec& problem, const DofMap& velocity_dofs,
                            const DofMap& pressure_dofs);

struct ViolationSummary {
    long long count = 0;
    double percent = 0.0;  // relative to the pressure dof count
};

// Counts pressure dofs outside [lo - tol, hi + tol].  Negative tol selects
// the default 1e-10 * pressure_scale().
ViolationSummary detect_violations(const std::vector<double>& pressure,
                                   const BoundsVector& bounds, double tol = -1.0);

// Largest componentwise complementarity defect of residual F at state v:
// per finite side, |min(v - lo, max(F, 0))| and |min(hi - v, max(-F, 0))|.
// Zero exactly when the box complementarity conditions hold.
double complementarity_residual(const std::vector<double>& f, const std::vector<double>& v,
                                const BoundsVector& bounds);

}  // namespace vidarcy

#pragma once

#include <cmath>
#include <vector>

#include "vidarcy/sparse.hpp"

namespace vidarcy {

// 2x2 block Jacobian and block residual of the mixed system, velocity block
// first:  J = [[Juu, Jup], [Jpu, Jpp]],  F = [Fu; Fp].  Patterns are symbolic
// and state-independent; nonlinear iterations rewrite values only.
struct BlockSystem {
    SparseMatrix Juu, Jup, Jpu, Jpp;
    std::vector<double> Fu, Fp;

    int n_u() const { return Juu.rows(); }
    int n_p() const { return Jpu.rows(); }
    int n_total() const { return n_u() + n_p(); }

    // y = J x on concatenated vectors [u; p].
    void apply_jacobian(const double* x, double* y) const {
        const double* xu = x;
        const double* xp = x + n_u();
        Juu.multiply(xu, y);
        Jup.multiply_add(xp, y);
        Jpu.multiply(xu, y + n_u());
        Jpp.multiply_add(xp, y + n_u());
    }

    std::vector<double> residual() const {
        std::vector<double> r(Fu);
        r.insert(r.end(), Fp.begin(), Fp.end());
        return r;
    }

    double residual_norm() const {
        double s = 0.0;
        for (double v : Fu) s += v * v;
        for (double v : Fp) s += v * v;
        return std::sqrt(s);
    }
};

}  // namespace vidarcy

#pragma once

#include <vector>

#include "vidarcy/block_system.hpp"
#include "vidarcy/gmres.hpp"
#include "vidarcy/ilu.hpp"

namespace vidarcy {

/// @file schur.hpp
/// Block-factored preconditioner for the mixed Jacobian.  The exact inverse
/// factors as
///   J^-1 = [I, -Juu^-1 Jup; 0, I] diag(Juu^-1, S^-1) [I, 0; -Jpu Juu^-1, I],
/// with S = Jpp - Jpu Juu^-1 Jup.  The preconditioner replaces the Juu^-1
/// actions by one ILU(0) sweep and S by the explicitly assembled lumped
/// approximation S_p = Jpp - Jpu diag(Juu)^-1 Jup, itself applied through one
/// ILU(0) sweep.  The application is linear and stateless, as a Krylov
/// preconditioner must be.

// One application of the three-factor inverse with caller-supplied actions
// for Juu^-1 and S^-1; with exact actions this reproduces J^-1 exactly.
template <class InvUU, class InvS>
void apply_block_factored_inverse(const SparseMatrix& jup, const SparseMatrix& jpu,
                                  InvUU&& inv_uu, InvS&& inv_s, const double* r, double* z) {
    const int nu = jup.rows();
    const int np = jpu.rows();
    std::vector<double> zu(nu), rp(r + nu, r + nu + np), zp(np), t(nu);

    inv_uu(r, zu.data());                  // zu' = Juu^-1 ru
    jpu.multiply_sub(zu.data(), rp.data());  // rp' = rp - Jpu zu'
    inv_s(rp.data(), zp.data());           // zp  = S^-1 rp'
    jup.multiply(zp.data(), t.data());
    std::vector<double> t2(nu);
    inv_uu(t.data(), t2.data());
    for (int i = 0; i < nu; ++i) z[i] = zu[i] - t2[i];  // zu = zu' - Juu^-1 Jup zp
    for (int i = 0; i < np; ++i) z[nu + i] = zp[i];
}

// Solves J delta = rhs through GMRES behind the block preconditioner, with the
// system symmetrically Jacobi-equilibrated first: velocity dofs are scaled by
// |diag(Juu)|^-1/2 and pressure dofs by |diag(S_p)|^-1/2, so both diagonal
// blocks sit at unit magnitude.  Permeabilities varying over many decades
// (K ~ r^2 fields) otherwise spread the velocity diagonal across 10+ orders
// and the amplified roundoff freezes restarted GMRES; the scaling is exact,
// only the Krylov iteration sees the scaled system.  `delta` carries the
// initial guess in (scaled internally) and the unscaled solution out.
// Convergence is judged, and relative_residual reported, in the true unscaled
// norm; iterative refinement re-solves until that norm meets rtol.
GmresResult solve_block_system(const BlockSystem& sys, const std::vector<double>& rhs,
                               std::vector<double>& delta, double rtol, int max_iterations,
                               int restart);

class SchurPreconditioner {
  public:
    SchurPreconditioner() = default;
    explicit SchurPreconditioner(const BlockSystem& sys) { build(sys); }

    // Factors ILU(0) of Juu, assembles S_p = Jpp - Jpu diag(Juu)^-1 Jup and
    // factors its ILU(0).  Throws when S_p has a structurally empty row
    // (singular preconditioner).  Zero diagonal entries drop out of the
    // lumping; negative ones (possible at bound-violating states) keep their
    // sign.
    void build(const BlockSystem& sys);

    // z = P^-1 r on concatenated vectors; `sys` must outlive the preconditioner.
    void apply(const double* r, double* z) const;

    const SparseMatrix& schur_matrix() const { return sp_; }
    int pivot_shift_count() const { return ilu_uu_.pivot_shift_count() + ilu_sp_.pivot_shift_count(); }

  private:
    const BlockSystem* sys_ = nullptr;
    Ilu0 ilu_uu_, ilu_sp_;
    SparseMatrix sp_;
};

}  // namespace vidarcy

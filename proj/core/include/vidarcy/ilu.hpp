#pragma once

#include "vidarcy/sparse.hpp"

namespace vidarcy {

// Zero fill-in incomplete LU factorization on the matrix's own pattern.
// Rows must contain their diagonal entry structurally.  A vanishing pivot is
// replaced by 1e-12 times the original row's 2-norm (counted, not fatal), so
// a sweep is always applicable.
class Ilu0 {
  public:
    Ilu0() = default;
    explicit Ilu0(const SparseMatrix& a) { factor(a); }

    void factor(const SparseMatrix& a);

    // z = (L U)^-1 r, one forward and one backward sweep.
    void apply(const double* r, double* z) const;

    int pivot_shift_count() const { return shifts_; }
    int size() const { return lu_.rows(); }

  private:
    SparseMatrix lu_;
    std::vector<int> diag_;  // value index of each row's diagonal
    int shifts_ = 0;
};

}  // namespace vidarcy

#pragma once

#include <vector>

namespace vidarcy {

// Compressed-row sparse matrix with a fixed symbolic pattern: columns sorted
// and unique within each row.  Assembly reuses the pattern across nonlinear
// iterations and only rewrites the values.
class SparseMatrix {
  public:
    SparseMatrix() = default;

    static SparseMatrix from_pattern(int rows, int cols,
                                     std::vector<std::vector<int>> pattern);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long nnz() const { return static_cast<long long>(col_idx_.size()); }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    void set_zero();

    // Index into values() for entry (r, c); -1 when outside the pattern.
    int find(int r, int c) const;
    // Adds into an existing pattern entry; throws when (r, c) is not present.
    void add(int r, int c, double v);
    double get(int r, int c) const;

    void multiply(const double* x, double* y) const;             // y  = A x
    void multiply_add(const double* x, double* y) const;         // y += A x
    void multiply_sub(const double* x, double* y) const;         // y -= A x

    std::vector<double> diagonal() const;  // zeros where the diagonal is absent

    // Multiplies every row by a scalar (used by the semismooth row scaling).
    void scale_row(int r, double s);

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

// S = C - A * diag(d) * B with the three factors in CSR form; C may be empty
// (pattern-less) as long as its dimensions match.  Used for the lumped Schur
// complement, where d is the inverted diagonal of the velocity block.
SparseMatrix triple_product_schur(const SparseMatrix& c, const SparseMatrix& a,
                                  const std::vector<double>& d, const SparseMatrix& b);

}  // namespace vidarcy

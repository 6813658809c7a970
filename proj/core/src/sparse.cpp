#include "vidarcy/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace vidarcy {

SparseMatrix SparseMatrix::from_pattern(int rows, int cols,
                                        std::vector<std::vector<int>> pattern) {
    if (rows < 0 || cols < 0 || static_cast<int>(pattern.size()) != rows)
        throw std::invalid_argument("sparse pattern size mismatch");
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_ptr_.assign(rows + 1, 0);
    long long total = 0;
    for (int r = 0; r < rows; ++r) {
        auto& row = pattern[r];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        if (!row.empty() && (row.front() < 0 || row.back() >= cols))
            throw std::invalid_argument("sparse pattern column out of range");
        total += static_cast<long long>(row.size());
        m.row_ptr_[r + 1] = static_cast<int>(total);
    }
    m.col_idx_.reserve(total);
    for (const auto& row : pattern) m.col_idx_.insert(m.col_idx_.end(), row.begin(), row.end());
    m.values_.assign(total, 0.0);
    return m;
}

void SparseMatrix::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

int SparseMatrix::find(int r, int c) const {
    const auto begin = col_idx_.begin() + row_ptr_[r];
    const auto end = col_idx_.begin() + row_ptr_[r + 1];
    const auto it = std::lower_bound(begin, end, c);
    if (it == end || *it != c) return -1;
    return static_cast<int>(it - col_idx_.begin());
}

void SparseMatrix::add(int r, int c, double v) {
    const int k = find(r, c);
    if (k < 0) throw std::runtime_error("sparse add outside the symbolic pattern");
    values_[k] += v;
}

double SparseMatrix::get(int r, int c) const {
    const int k = find(r, c);
    return k < 0 ? 0.0 : values_[k];
}

void SparseMatrix::multiply(const double* x, double* y) const {
    for (int r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
        y[r] = s;
    }
}

void SparseMatrix::multiply_add(const double* x, double* y) const {
    for (int r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
        y[r] += s;
    }
}

void SparseMatrix::multiply_sub(const double* x, double* y) const {
    for (int r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
        y[r] -= s;
    }
}

std::vector<double> SparseMatrix::diagonal() const {
    std::vector<double> d(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
        const int k = find(r, r);
        if (k >= 0) d[r] = values_[k];
    }
    return d;
}

void SparseMatrix::scale_row(int r, double s) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) values_[k] *= s;
}

SparseMatrix triple_product_schur(const SparseMatrix& c, const SparseMatrix& a,
                                  const std::vector<double>& d, const SparseMatrix& b) {
    const int rows = a.rows();
    const int cols = b.cols();
    if (static_cast<int>(d.size()) != a.cols() || b.rows() != a.cols())
        throw std::invalid_argument("triple product dimension mismatch");
    const bool with_c = c.nnz() > 0;
    if (with_c && (c.rows() != rows || c.cols() != cols))
        throw std::invalid_argument("triple product C block dimension mismatch");

    // Symbolic and numeric pass share the sparse-accumulator scan.
    std::vector<int> marker(cols, -1);
    std::vector<int> touched;
    std::vector<double> accum(cols, 0.0);
    std::vector<std::vector<int>> pattern(rows);
    std::vector<std::vector<double>> numbers(rows);

    for (int i = 0; i < rows; ++i) {
        touched.clear();
        if (with_c) {
            for (int k = c.row_ptr()[i]; k < c.row_ptr()[i + 1]; ++k) {
                const int j = c.col_idx()[k];
                marker[j] = i;
                accum[j] = c.values()[k];
                touched.push_back(j);
            }
        }
        for (int ka = a.row_ptr()[i]; ka < a.row_ptr()[i + 1]; ++ka) {
            const int k = a.col_idx()[ka];
            const double aik = a.values()[ka] * d[k];
            for (int kb = b.row_ptr()[k]; kb < b.row_ptr()[k + 1]; ++kb) {
                const int j = b.col_idx()[kb];
                if (marker[j] != i) {
                    marker[j] = i;
                    accum[j] = 0.0;
                    touched.push_back(j);
                }
                accum[j] -= aik * b.values()[kb];
            }
        }
        std::sort(touched.begin(), touched.end());
        pattern[i] = touched;
        numbers[i].reserve(touched.size());
        for (int j : touched) numbers[i].push_back(accum[j]);
    }

    SparseMatrix s = SparseMatrix::from_pattern(rows, cols, std::move(pattern));
    auto& vals = s.values();
    long long pos = 0;
    for (int i = 0; i < rows; ++i)
        for (double v : numbers[i]) vals[pos++] = v;
    return s;
}

}  // namespace vidarcy

#include "vidarcy/ilu.hpp"

#include <cmath>
#include <stdexcept>

namespace vidarcy {

void Ilu0::factor(const SparseMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("ILU(0) needs a square matrix");
    lu_ = a;
    shifts_ = 0;
    const int n = lu_.rows();
    diag_.assign(n, -1);

    const auto& row_ptr = lu_.row_ptr();
    const auto& col = lu_.col_idx();
    auto& v = lu_.values();

    std::vector<double> row_norm(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += v[k] * v[k];
        row_norm[i] = std::sqrt(s);
    }

    for (int i = 0; i < n; ++i) {
        diag_[i] = lu_.find(i, i);
        if (diag_[i] < 0)
            throw std::invalid_argument("ILU(0) pattern is missing a diagonal entry");
    }

    std::vector<int> pos(n, -1);  // column -> value index within the working row
    for (int i = 0; i < n; ++i) {
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) pos[col[k]] = k;

        for (int kk = row_ptr[i]; kk < row_ptr[i + 1]; ++kk) {
            const int k = col[kk];
            if (k >= i) break;
            double pivot = v[diag_[k]];
            if (pivot == 0.0) {
                pivot = 1e-12 * (row_norm[k] > 0.0 ? row_norm[k] : 1.0);
                v[diag_[k]] = pivot;
                ++shifts_;
            }
            const double lik = v[kk] / pivot;
            v[kk] = lik;
            for (int jj = diag_[k] + 1; jj < row_ptr[k + 1]; ++jj) {
                const int p = pos[col[jj]];
                if (p >= 0) v[p] -= lik * v[jj];
            }
        }

        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) pos[col[k]] = -1;
    }

    for (int i = 0; i < n; ++i) {
        if (v[diag_[i]] == 0.0) {
            v[diag_[i]] = 1e-12 * (row_norm[i] > 0.0 ? row_norm[i] : 1.0);
            ++shifts_;
        }
    }
}

void Ilu0::apply(const double* r, double* z) const {
    const int n = lu_.rows();
    const auto& row_ptr = lu_.row_ptr();
    const auto& col = lu_.col_idx();
    const auto& v = lu_.values();

    for (int i = 0; i < n; ++i) {
        double s = r[i];
        for (int k = row_ptr[i]; k < diag_[i]; ++k) s -= v[k] * z[col[k]];
        z[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = z[i];
        for (int k = diag_[i] + 1; k < row_ptr[i + 1]; ++k) s -= v[k] * z[col[k]];
        z[i] = s / v[diag_[i]];
    }
}

}  // namespace vidarcy

#include "vidarcy/gmres.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vidarcy {

namespace {

double nrm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

GmresResult gmres(int n, const LinearOperator& op, const LinearOperator& right_pc,
                  const std::vector<double>& rhs, std::vector<double>& x, double rtol,
                  int max_iterations, int restart) {
    if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("gmres: rhs size mismatch");
    if (x.empty()) x.assign(n, 0.0);
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("gmres: x size mismatch");
    if (restart < 1) throw std::invalid_argument("gmres: restart must be >= 1");

    GmresResult result;
    const double bnorm = nrm2(rhs);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        result.converged = true;
        result.relative_residual = 0.0;
        return result;
    }
    const double target = rtol * bnorm;

    const int m = restart;
    std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> h(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1);
    std::vector<double> w(n), z(n);

    auto apply_pc = [&](const std::vector<double>& in, std::vector<double>& out) {
        if (right_pc)
            right_pc(in.data(), out.data());
        else
            out = in;
    };

    auto record = [&result](double relres) {
        if (!result.history.empty()) relres = std::min(relres, result.history.back());
        result.history.push_back(relres);
    };

    std::vector<double> r(n);
    op(x.data(), r.data());
    for (int i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    double rnorm = nrm2(r);
    record(rnorm / bnorm);

    double cycle_start_norm = rnorm;
    while (rnorm > target && result.iterations < max_iterations) {
        const double beta = rnorm;
        for (int i = 0; i < n; ++i) v[0][i] = r[i] / beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        int k = 0;
        for (; k < m && result.iterations < max_iterations && rnorm > target; ++k) {
            apply_pc(v[k], z);
            op(z.data(), w.data());

            // modified Gram-Schmidt
            for (int j = 0; j <= k; ++j) {
                double hij = 0.0;
                for (int i = 0; i < n; ++i) hij += w[i] * v[j][i];
                h[j][k] = hij;
                for (int i = 0; i < n; ++i) w[i] -= hij * v[j][i];
            }
            const double hk1 = nrm2(w);
            h[k + 1][k] = hk1;
            const bool breakdown = hk1 <= 1e-32 * bnorm;
            if (!breakdown)
                for (int i = 0; i < n; ++i) v[k + 1][i] = w[i] / hk1;

            for (int j = 0; j < k; ++j) {
                const double t = cs[j] * h[j][k] + sn[j] * h[j + 1][k];
                h[j + 1][k] = -sn[j] * h[j][k] + cs[j] * h[j + 1][k];
                h[j][k] = t;
            }
            const double denom = std::hypot(h[k][k], h[k + 1][k]);
            cs[k] = denom == 0.0 ? 1.0 : h[k][k] / denom;
            sn[k] = denom == 0.0 ? 0.0 : h[k + 1][k] / denom;
            h[k][k] = cs[k] * h[k][k] + sn[k] * h[k + 1][k];
            h[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];

            rnorm = std::abs(g[k + 1]);
            ++result.iterations;
            record(rnorm / bnorm);
            if (breakdown) {
                ++k;
                break;
            }
        }

        // y = H^-1 g by back substitution, then x += M^-1 (V y).
        std::vector<double> y(k, 0.0);
        for (int i = k - 1; i >= 0; --i) {
            double s = g[i];
            for (int j = i + 1; j < k; ++j) s -= h[i][j] * y[j];
            y[i] = (h[i][i] == 0.0) ? 0.0 : s / h[i][i];
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) w[i] += y[j] * v[j][i];
        apply_pc(w, z);
        for (int i = 0; i < n; ++i) x[i] += z[i];

        op(x.data(), r.data());
        for (int i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
        rnorm = nrm2(r);

        if (rnorm > target && rnorm >= cycle_start_norm * (1.0 - 1e-12)) {
            result.stagnated = true;
            break;
        }
        cycle_start_norm = rnorm;
    }

    result.relative_residual = rnorm / bnorm;
    result.converged = rnorm <= target;
    return result;
}

}  // namespace vidarcy

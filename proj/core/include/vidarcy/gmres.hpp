#pragma once

#include <functional>
#include <vector>

namespace vidarcy {

using LinearOperator = std::function<void(const double* x, double* y)>;

struct GmresResult {
    int iterations = 0;
    bool converged = false;
    bool stagnated = false;           // a whole restart cycle made no progress
    double relative_residual = 1.0;   // ||b - A x|| / ||b||
    std::vector<double> history;      // residual-norm estimate per iteration
};

// Restarted GMRES, right-preconditioned: iterates on A M^-1 so the recurrence
// tracks the true residual of A x = b; converged when ||b - A x|| <= rtol ||b||.
// `x` carries the initial guess in and the solution out; `right_pc` may be
// empty for an unpreconditioned solve.
GmresResult gmres(int n, const LinearOperator& op, const LinearOperator& right_pc,
                  const std::vector<double>& rhs, std::vector<double>& x, double rtol = 1e-7,
                  int max_iterations = 20000, int restart = 200);

}  // namespace vidarcy

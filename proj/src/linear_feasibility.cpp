#include "bell/linear_feasibility.hpp"

#include <cmath>
#include <cstddef>

namespace bell {

Feasibility convex_combination_exists(const std::vector<std::array<double, 8>>& vertices,
                                      const std::array<double, 8>& target,
                                      double tol) {
    constexpr std::size_t kDim = 8;
    const std::size_t m = kDim + 1;            // equality rows (coords + weight sum)
    const std::size_t k = vertices.size();     // structural variables
    const std::size_t n = k + m;               // plus one artificial per row
    constexpr double kPivotEps = 1e-11;

    // Tableau: m rows of n columns plus rhs, row-major.
    std::vector<double> a(m * (n + 1), 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * (n + 1) + c]; };

    for (std::size_t r = 0; r < kDim; ++r) {
        for (std::size_t j = 0; j < k; ++j) at(r, j) = vertices[j][r];
        at(r, n) = target[r];
    }
    for (std::size_t j = 0; j < k; ++j) at(kDim, j) = 1.0;
    at(kDim, n) = 1.0;

    // Flip rows so every rhs is nonnegative, then install the artificial basis.
    for (std::size_t r = 0; r < m; ++r) {
        if (at(r, n) < 0.0)
            for (std::size_t c = 0; c <= n; ++c) at(r, c) = -at(r, c);
        at(r, k + r) = 1.0;
    }

    // Phase-1 objective row: minimize the artificial sum. Reduced costs start
    // as -(column sums over the constraint rows) for structural columns.
    std::vector<double> obj(n + 1, 0.0);
    for (std::size_t c = 0; c <= n; ++c) {
        if (c >= k && c < n) continue;  // artificials carry zero reduced cost in basis
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += at(r, c);
        obj[c] = -s;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = k + r;

    const int max_iter = 2000;
    for (int iter = 0; iter < max_iter; ++iter) {
        // Bland: entering = lowest-index column with negative reduced cost.
        std::size_t enter = n;
        for (std::size_t c = 0; c < n; ++c) {
            if (obj[c] < -kPivotEps) {
                enter = c;
                break;
            }
        }
        if (enter == n) {
            // Optimal: -obj[n] is the remaining artificial mass.
            return -obj[n] <= tol + 1e-12 ? Feasibility::Feasible : Feasibility::Infeasible;
        }

        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            const double piv = at(r, enter);
            if (piv > kPivotEps) {
                const double ratio = at(r, n) / piv;
                if (leave == m || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == m) return Feasibility::SolverFailure;  // unbounded: should not happen

        const double piv = at(leave, enter);
        for (std::size_t c = 0; c <= n; ++c) at(leave, c) /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave) continue;
            const double f = at(r, enter);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= n; ++c) at(r, c) -= f * at(leave, c);
        }
        const double f = obj[enter];
        if (f != 0.0)
            for (std::size_t c = 0; c <= n; ++c) obj[c] -= f * at(leave, c);
        basis[leave] = enter;
    }
    return Feasibility::SolverFailure;
}

}  // namespace bell

#pragma once

// Naive dense Big-M tableau simplex with Bland's rule. Test oracle only:
// deliberately simple and independent of the production solver.

#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

struct TableauResult {
    enum class Status { Optimal, Infeasible, Unbounded } status;
    double objective = 0.0;
    std::vector<double> x;
};

/// min c'x s.t. A x <= b (rows 0..n_ineq-1), A x = b (the rest), x >= 0.
inline TableauResult tableau_simplex(const std::vector<std::vector<double>>& a,
                                     const std::vector<double>& b,
                                     const std::vector<double>& c, int n_ineq) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(c.size());
    const double big_m = 1e7;

    // columns: structural | slack (ineq) | artificial (all rows)
    const int cols = n + n_ineq + m;
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols + 1, 0.0));
    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) {
        const double sign = b[r] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) t[r][j] = sign * a[r][j];
        if (r < n_ineq) t[r][n + r] = sign;
        t[r][n + n_ineq + r] = 1.0;
        t[r][cols] = sign * b[r];
        basis[r] = n + n_ineq + r;
    }
    for (int j = 0; j < n; ++j) t[m][j] = c[j];
    for (int r = 0; r < m; ++r) t[m][n + n_ineq + r] = big_m;
    // price out the artificial basis
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= cols; ++j) t[m][j] -= big_m * t[r][j];

    for (long iter = 0; iter < 200000; ++iter) {
        int enter = -1;
        for (int j = 0; j < cols; ++j)
            if (t[m][j] < -1e-9) {
                enter = j;  // Bland: lowest index
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            if (t[r][enter] > 1e-9) {
                const double ratio = t[r][cols] / t[r][enter];
                if (ratio < best - 1e-12 ||
                    (ratio < best + 1e-12 && (leave < 0 || basis[r] < basis[leave]))) {
                    best = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) return {TableauResult::Status::Unbounded, 0.0, {}};
        const double piv = t[leave][enter];
        for (int j = 0; j <= cols; ++j) t[leave][j] /= piv;
        for (int r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const double f = t[r][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) t[r][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    for (int r = 0; r < m; ++r)
        if (basis[r] >= n + n_ineq && t[r][cols] > 1e-6)
            return {TableauResult::Status::Infeasible, 0.0, {}};
    TableauResult res{TableauResult::Status::Optimal, 0.0, std::vector<double>(n, 0.0)};
    for (int r = 0; r < m; ++r)
        if (basis[r] < n) res.x[basis[r]] = t[r][cols];
    for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
}

}  // namespace oracle

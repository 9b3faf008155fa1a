#include "fnn/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace fnn {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kMaxIterations = 50000;

struct Tableau {
    int num_vars = 0;        // original variables
    int num_cols = 0;        // original + artificial
    std::vector<std::vector<double>> rows;  // constraint rows, rhs appended
    std::vector<double> z;                  // reduced-cost row, rhs appended
    std::vector<int> basis;                 // basic variable per row

    int rhs_col() const { return num_cols; }

    void pivot(int r, int s) {
        const double piv = rows[r][s];
        for (double& v : rows[r]) v /= piv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            const double f = rows[i][s];
            if (f == 0.0) continue;
            for (int j = 0; j <= num_cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        const double fz = z[s];
        if (fz != 0.0)
            for (int j = 0; j <= num_cols; ++j) z[j] -= fz * rows[r][j];
        basis[r] = s;
    }

    // Bland: enter the lowest-index column with positive reduced cost among
    // the first `limit` columns; returns -1 when optimal.
    int entering(int limit) const {
        for (int j = 0; j < limit; ++j)
            if (z[j] > kPivotTol) return j;
        return -1;
    }

    // Bland ratio test; returns -1 when the column is unbounded.
    int leaving(int s) const {
        int best = -1;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][s] <= kPivotTol) continue;
            const double ratio = rows[i][rhs_col()] / rows[i][s];
            if (best < 0 || ratio < best_ratio - 1e-12 ||
                (std::abs(ratio - best_ratio) <= 1e-12 &&
                 basis[i] < basis[static_cast<std::size_t>(best)])) {
                best = static_cast<int>(i);
                best_ratio = ratio;
            }
        }
        return best;
    }
};

void set_objective(Tableau& t, const std::vector<double>& costs) {
    t.z.assign(t.num_cols + 1, 0.0);
    for (int j = 0; j < static_cast<int>(costs.size()); ++j) t.z[j] = costs[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const int b = t.basis[i];
        const double cb = b < static_cast<int>(costs.size()) ? costs[b] : 0.0;
        if (cb == 0.0) continue;
        for (int j = 0; j <= t.num_cols; ++j) t.z[j] -= cb * t.rows[i][j];
    }
}

// Runs Bland pivots until optimality; entering restricted to columns < limit.
SimplexStatus run(Tableau& t, int limit) {
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const int s = t.entering(limit);
        if (s < 0) return SimplexStatus::optimal;
        const int r = t.leaving(s);
        if (r < 0) return SimplexStatus::unbounded;
        t.pivot(r, s);
    }
    return SimplexStatus::iteration_limit;
}

}  // namespace

SimplexSolution simplex_maximize(const LinearProgram& lp) {
    const int n = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());
    if (static_cast<int>(lp.objective.size()) != n)
        throw std::invalid_argument("simplex: objective size mismatch");
    if (lp.rhs.size() != lp.rows.size())
        throw std::invalid_argument("simplex: rhs size mismatch");

    Tableau t;
    t.num_vars = n;
    t.num_cols = n + m;
    t.rows.assign(m, std::vector<double>(t.num_cols + 1, 0.0));
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(lp.rows[i].size()) != n)
            throw std::invalid_argument("simplex: row size mismatch");
        const double sign = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) t.rows[i][j] = sign * lp.rows[i][j];
        t.rows[i][n + i] = 1.0;
        t.rows[i][t.rhs_col()] = sign * lp.rhs[i];
        t.basis[i] = n + i;
    }

    // Phase one: drive the artificial variables to zero.
    std::vector<double> phase1_costs(t.num_cols, 0.0);
    for (int i = 0; i < m; ++i) phase1_costs[n + i] = -1.0;
    set_objective(t, phase1_costs);
    SimplexStatus status = run(t, t.num_cols);
    if (status != SimplexStatus::optimal) return SimplexSolution{status, 0.0, {}};

    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= n) infeasibility += t.rows[i][t.rhs_col()];
    if (infeasibility > 1e-7) return SimplexSolution{SimplexStatus::infeasible, 0.0, {}};

    // Pivot leftover artificials out; rows that offer no pivot are redundant.
    for (int i = static_cast<int>(t.rows.size()) - 1; i >= 0; --i) {
        if (t.basis[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(t.rows[i][j]) > kPivotTol) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            t.pivot(i, col);
        } else {
            t.rows.erase(t.rows.begin() + i);
            t.basis.erase(t.basis.begin() + i);
        }
    }

    // Phase two on the original objective; artificial columns stay ignored.
    std::vector<double> costs(t.num_cols, 0.0);
    for (int j = 0; j < n; ++j) costs[j] = lp.objective[j];
    set_objective(t, costs);
    status = run(t, n);
    if (status != SimplexStatus::optimal) return SimplexSolution{status, 0.0, {}};

    SimplexSolution sol;
    sol.status = SimplexStatus::optimal;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.rows[i][t.rhs_col()];
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
    return sol;
}

}  // namespace fnn

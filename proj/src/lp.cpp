#include "diskmorse/lp.hpp"

#include <algorithm>
#include <cmath>

namespace diskmorse {

namespace {
constexpr double kEps = 1e-11;
}

LpFeasibility solve_equality_feasibility(const std::vector<std::vector<double>>& A_in,
                                         std::span<const double> b_in) {
    LpFeasibility out;
    const int m = static_cast<int>(A_in.size());
    const int n = m > 0 ? static_cast<int>(A_in[0].size()) : 0;
    if (m == 0) {
        out.feasible = true;
        out.solution.assign(n, 0.0);
        return out;
    }

    // scale rows to unit max amplitude and flip signs so b >= 0
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    std::vector<double> b(m);
    std::vector<double> rowscale(m, 1.0);
    for (int i = 0; i < m; ++i) {
        double mx = std::abs(b_in[i]);
        for (int j = 0; j < n; ++j) mx = std::max(mx, std::abs(A_in[i][j]));
        if (mx == 0.0) mx = 1.0;
        double s = (b_in[i] < 0.0 ? -1.0 : 1.0) / mx;
        rowscale[i] = s;
        for (int j = 0; j < n; ++j) A[i][j] = A_in[i][j] * s;
        b[i] = b_in[i] * s;
    }

    // tableau: columns 0..n-1 original vars, n..n+m-1 artificials, last = rhs
    const int cols = n + m + 1;
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols, 0.0));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1.0;
        T[i][cols - 1] = b[i];
        basis[i] = n + i;
    }
    // objective row: minimize sum of artificials -> reduced costs
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += T[i][j];
        T[m][j] = (j >= n && j < n + m) ? s - 1.0 : s;  // c_j - z_j with c = e_artificials
    }
    // note: we store z_j - c_j in row m; entering when positive

    auto pivot = [&](int pr, int pc) {
        double pv = T[pr][pc];
        for (int j = 0; j < cols; ++j) T[pr][j] /= pv;
        for (int i = 0; i <= m; ++i) {
            if (i == pr) continue;
            double f = T[i][pc];
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) T[i][j] -= f * T[pr][j];
        }
        basis[pr] = pc;
    };

    const int max_pivots = 2000 + 50 * (m + n);
    for (int step = 0; step < max_pivots; ++step) {
        // Bland: entering = lowest-index column with positive reduced row value
        int pc = -1;
        for (int j = 0; j < n + m; ++j) {
            if (T[m][j] > kEps) {
                pc = j;
                break;
            }
        }
        if (pc < 0) break;  // optimal
        int pr = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            if (T[i][pc] > kEps) {
                double ratio = T[i][cols - 1] / T[i][pc];
                if (pr < 0 || ratio < best - kEps ||
                    (ratio < best + kEps && basis[i] < basis[pr])) {
                    pr = i;
                    best = ratio;
                }
            }
        }
        if (pr < 0) break;  // unbounded cannot happen in phase 1
        pivot(pr, pc);
    }

    double objective = -T[m][cols - 1];  // row m holds z - c; rhs accumulates -z
    // the artificial objective value is sum of artificial basic values
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n) art_sum += T[i][cols - 1];
    (void)objective;

    if (art_sum <= 1e-9) {
        out.feasible = true;
        out.solution.assign(n, 0.0);
        for (int i = 0; i < m; ++i)
            if (basis[i] < n) out.solution[basis[i]] = std::max(0.0, T[i][cols - 1]);
        double res = 0.0;
        for (int i = 0; i < m; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += A_in[i][j] * out.solution[j];
            res = std::max(res, std::abs(s - b_in[i]));
        }
        out.residual = res;
    } else {
        out.feasible = false;
        // Farkas certificate from the final reduced costs of the artificials:
        // y_i = 1 - rc(artificial i), expressed in the scaled system, then
        // mapped back through the row scaling.
        out.farkas.assign(m, 0.0);
        for (int i = 0; i < m; ++i) {
            double rc = -T[m][n + i];  // c_j - (z_j - c_j) bookkeeping: row m = z - c
            // row m stores z_j - c_j, so rc (= c_j - z_j) = -T[m][j]; y_i = c - rc = 1 - rc
            out.farkas[i] = (1.0 - rc) * rowscale[i];
        }
        out.residual = art_sum;
    }
    return out;
}

}  // namespace diskmorse

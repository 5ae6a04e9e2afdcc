#include "saet/linprog.hpp"

namespace saet {

namespace {

struct Tableau {
    // rows: constraints, last column: rhs. basis[i] = column basic in row i.
    Mat t;
    std::vector<int> basis;
    int cols = 0;

    void pivot(int r, int c) {
        Q p = t[r][c];
        for (auto& v : t[r]) v /= p;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (static_cast<int>(i) == r || t[i][c] == 0) continue;
            Q f = t[i][c];
            for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // Minimizes cost over columns in [0, usable). Returns false if unbounded.
    bool optimize(const Vec& cost, int usable) {
        int m = static_cast<int>(t.size());
        for (;;) {
            // reduced costs: cost_j - sum_i cost_basis(i) * t[i][j]
            int enter = -1;
            for (int j = 0; j < usable; ++j) {
                Q rc = cost[j];
                for (int i = 0; i < m; ++i)
                    if (t[i][j] != 0) rc -= cost[basis[i]] * t[i][j];
                if (rc < 0) { enter = j; break; } // Bland: smallest index
            }
            if (enter < 0) return true;
            int leave = -1;
            Q best;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Q ratio = t[i][cols] / t[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

} // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const int n = static_cast<int>(lp.nvars);
    const int meq = static_cast<int>(lp.eq_a.size());
    const int mle = static_cast<int>(lp.le_a.size());
    const int m = meq + mle;
    // columns: x+ (n), x- (n), slacks (mle), artificials (m)
    const int nx = 2 * n;
    const int art0 = nx + mle;
    Tableau tb;
    tb.cols = art0 + m;
    tb.t.assign(m, Vec(tb.cols + 1, Q(0)));
    tb.basis.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        const Vec& row = i < meq ? lp.eq_a[i] : lp.le_a[i - meq];
        Q rhs = i < meq ? lp.eq_b[i] : lp.le_b[i - meq];
        Vec& r = tb.t[i];
        for (int j = 0; j < n; ++j) {
            r[j] = row[j];
            r[n + j] = -row[j];
        }
        if (i >= meq) r[nx + (i - meq)] = 1;
        r[tb.cols] = rhs;
        if (rhs < 0)
            for (auto& v : r) v = -v;
        r[art0 + i] = 1;
        tb.basis[i] = art0 + i;
    }
    Vec phase1(tb.cols, Q(0));
    for (int i = 0; i < m; ++i) phase1[art0 + i] = 1;
    tb.optimize(phase1, tb.cols);
    Q infeas = 0;
    for (int i = 0; i < m; ++i)
        if (tb.basis[i] >= art0) infeas += tb.t[i][tb.cols];
    LpResult res;
    if (infeas != 0) return res;
    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < art0) continue;
        for (int j = 0; j < art0; ++j)
            if (tb.t[i][j] != 0) { tb.pivot(i, j); break; }
    }
    res.feasible = true;
    if (!lp.objective.empty()) {
        Vec cost(tb.cols, Q(0));
        for (int j = 0; j < n; ++j) {
            cost[j] = lp.objective[j];
            cost[n + j] = -lp.objective[j];
        }
        // Artificial columns stay out: restrict entering columns to art0.
        if (!tb.optimize(cost, art0)) res.unbounded = true;
    }
    res.x.assign(n, Q(0));
    for (int i = 0; i < m; ++i) {
        int b = tb.basis[i];
        if (b < n) res.x[b] += tb.t[i][tb.cols];
        else if (b < nx) res.x[b - n] -= tb.t[i][tb.cols];
    }
    return res;
}

} // namespace saet

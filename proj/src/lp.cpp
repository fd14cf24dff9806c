#include "qpoly/lp.hpp"

#include <cassert>
#include <limits>

#include "qpoly/errors.hpp"

namespace qpoly {

namespace {

// Standard-form tableau: maximize c.v, T v = b, v >= 0, b >= 0.
// Each free input variable is split into a difference of two nonnegative
// columns; inequality rows get slack or surplus columns; '>' and '=' rows
// get artificial columns for phase 1.
struct Tableau {
    std::size_t ncols = 0;
    std::vector<std::vector<Rational>> t;  // m x (ncols + 1), last col = b
    std::vector<std::size_t> basis;        // basic variable of each row
    std::vector<Rational> cost;            // objective coefficient per column

    Rational& b(std::size_t i) { return t[i][ncols]; }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = t[row][col];
        for (auto& v : t[row]) v /= p;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == row || t[i][col] == 0) continue;
            const Rational f = t[i][col];
            for (std::size_t j = 0; j <= ncols; ++j) t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    // Bland's rule; banned columns may never enter (retired artificials).
    // Returns false at optimality, throws on unbounded.
    bool improve(const std::vector<bool>& banned) {
        // Reduced cost of column j: cost[j] - sum_i cost[basis_i] * t[i][j].
        for (std::size_t j = 0; j < ncols; ++j) {
            if (banned[j]) continue;
            Rational red = cost[j];
            for (std::size_t i = 0; i < t.size(); ++i)
                if (cost[basis[i]] != 0 && t[i][j] != 0) red -= cost[basis[i]] * t[i][j];
            if (red <= 0) continue;
            // Leaving row: minimum ratio, ties by smallest basis index.
            std::size_t leave = t.size();
            Rational best = 0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i][j] <= 0) continue;
                Rational ratio = b(i) / t[i][j];
                if (leave == t.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t.size()) throw Error("lp: unbounded column");
            pivot(leave, j);
            return true;
        }
        return false;
    }

    Rational objective_value() const {
        Rational z = 0;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (cost[basis[i]] != 0) z += cost[basis[i]] * t[i][ncols];
        return z;
    }
};

}  // namespace

LpResult lp_maximize(std::size_t nvars, const std::vector<LpRow>& rows,
                     const std::vector<Rational>& objective) {
    if (objective.size() != nvars) throw Error("lp: objective size mismatch");
    const std::size_t m = rows.size();

    // Column layout: [x+ (nvars)] [x- (nvars)] [slack/surplus] [artificials].
    std::size_t nslack = 0, nart = 0;
    for (const auto& r : rows) {
        if (r.a.size() != nvars) throw Error("lp: row size mismatch");
        Rational rhs = r.rhs;
        char rel = r.rel;
        if (rhs < 0) rel = (rel == '<') ? '>' : (rel == '>') ? '<' : '=';
        if (rel != '=') ++nslack;
        if (rel != '<') ++nart;
    }
    Tableau tb;
    tb.ncols = 2 * nvars + nslack + nart;
    tb.t.assign(m, std::vector<Rational>(tb.ncols + 1, 0));
    tb.basis.assign(m, 0);
    tb.cost.assign(tb.ncols, 0);

    std::size_t next_slack = 2 * nvars;
    std::size_t next_art = 2 * nvars + nslack;
    std::vector<bool> is_art(tb.ncols, false);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = rows[i].rhs < 0;
        char rel = rows[i].rel;
        if (flip) rel = (rel == '<') ? '>' : (rel == '>') ? '<' : '=';
        for (std::size_t j = 0; j < nvars; ++j) {
            Rational v = flip ? -rows[i].a[j] : rows[i].a[j];
            tb.t[i][j] = v;
            tb.t[i][nvars + j] = -v;
        }
        tb.t[i][tb.ncols] = flip ? -rows[i].rhs : rows[i].rhs;
        if (rel == '<') {
            tb.t[i][next_slack] = 1;
            tb.basis[i] = next_slack++;
        } else if (rel == '>') {
            tb.t[i][next_slack] = -1;
            ++next_slack;
            tb.t[i][next_art] = 1;
            is_art[next_art] = true;
            tb.basis[i] = next_art++;
        } else {
            tb.t[i][next_art] = 1;
            is_art[next_art] = true;
            tb.basis[i] = next_art++;
        }
    }

    std::vector<bool> banned(tb.ncols, false);

    // Phase 1: maximize -sum(artificials).
    if (nart > 0) {
        for (std::size_t j = 0; j < tb.ncols; ++j) tb.cost[j] = is_art[j] ? Rational(-1) : Rational(0);
        while (tb.improve(banned)) {}
        if (tb.objective_value() != 0) return {LpStatus::Infeasible, 0, {}};
        // Pivot any artificial still basic (at zero) out of the basis, or
        // note its row as redundant by leaving it; ban artificials forever.
        for (std::size_t i = 0; i < m; ++i) {
            if (!is_art[tb.basis[i]]) continue;
            for (std::size_t j = 0; j < tb.ncols; ++j) {
                if (is_art[j] || tb.t[i][j] == 0) continue;
                tb.pivot(i, j);
                break;
            }
        }
        for (std::size_t j = 0; j < tb.ncols; ++j)
            if (is_art[j]) banned[j] = true;
    }

    // Phase 2.
    for (std::size_t j = 0; j < tb.ncols; ++j) tb.cost[j] = 0;
    for (std::size_t j = 0; j < nvars; ++j) {
        tb.cost[j] = objective[j];
        tb.cost[nvars + j] = -objective[j];
    }
    try {
        while (tb.improve(banned)) {}
    } catch (const Error&) {
        return {LpStatus::Unbounded, 0, {}};
    }

    LpResult res;
    res.status = LpStatus::Optimal;
    res.x.assign(nvars, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t v = tb.basis[i];
        if (v < nvars) res.x[v] += tb.t[i][tb.ncols];
        else if (v < 2 * nvars) res.x[v - nvars] -= tb.t[i][tb.ncols];
    }
    res.objective = 0;
    for (std::size_t j = 0; j < nvars; ++j) res.objective += objective[j] * res.x[j];
    return res;
}

}  // namespace qpoly

#include "qpoly/matrix.hpp"

#include <cassert>

#include "qpoly/errors.hpp"

namespace qpoly {

void QMatrix::append_row(const std::vector<Rational>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw Error("append_row: width mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<Rational> QMatrix::row(std::size_t i) const {
    return std::vector<Rational>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                 a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

namespace {

using ZRow = std::vector<Integer>;

// Clear denominators row by row; row scaling preserves rank, solution sets
// of A x = 0, and (with b scaled alongside) solutions of A x = b.
std::vector<ZRow> integer_rows(const QMatrix& m, const std::vector<Rational>* rhs) {
    std::vector<ZRow> out;
    out.reserve(m.rows());
    const std::size_t w = m.cols() + (rhs ? 1 : 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer lcm = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        if (rhs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), (*rhs)[i].get_den().get_mpz_t());
        ZRow row(w);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational v = m.at(i, j) * lcm;
            row[j] = v.get_num();
        }
        if (rhs) {
            Rational v = (*rhs)[i] * lcm;
            row[m.cols()] = v.get_num();
        }
        out.push_back(std::move(row));
    }
    return out;
}

struct Echelon {
    std::vector<ZRow> rows;            // echelon rows, fraction-free
    std::vector<std::size_t> pivot_col;  // pivot column of each echelon row
};

// Bareiss elimination with column skipping. The division by the previous
// pivot is exact for integer input. Pivot: first nonzero scanning down.
Echelon bareiss(std::vector<ZRow> m, std::size_t width) {
    Echelon e;
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < width && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        const Integer p = m[r][c];
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            const Integer f = m[i][c];
            for (std::size_t j = 0; j < width; ++j) {
                Integer t = m[i][j] * p - f * m[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(t);
            }
        }
        e.pivot_col.push_back(c);
        prev = p;
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

// Back substitution on an echelon form: express the pivot variables in
// terms of the free-variable assignment already placed in x.
void back_substitute(const Echelon& e, std::size_t width, std::vector<Rational>& x) {
    for (std::size_t i = e.rows.size(); i-- > 0;) {
        const std::size_t pc = e.pivot_col[i];
        Rational acc = 0;
        for (std::size_t j = pc + 1; j < width; ++j)
            if (e.rows[i][j] != 0) acc += Rational(e.rows[i][j]) * x[j];
        x[pc] = -acc / Rational(e.rows[i][pc]);
    }
}

}  // namespace

std::size_t rank(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss(integer_rows(m, nullptr), m.cols()).rows.size();
}

std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw Error("solve: rhs size mismatch");
    const std::size_t n = a.cols();
    // Eliminate on [A | -b]; solutions of A x = b are nullspace vectors of
    // the augmented system with last coordinate 1.
    std::vector<Rational> negb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) negb[i] = -b[i];
    Echelon e = bareiss(integer_rows(a, &negb), n + 1);
    // Inconsistent iff the augmented column is a pivot.
    for (std::size_t pc : e.pivot_col)
        if (pc == n) return std::nullopt;
    std::vector<Rational> x(n + 1, 0);
    x[n] = 1;
    back_substitute(e, n + 1, x);
    x.resize(n);
    return x;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& a) {
    const std::size_t n = a.cols();
    if (n == 0) return {};
    Echelon e = bareiss(integer_rows(a, nullptr), n);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t pc : e.pivot_col) is_pivot[pc] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(n, 0);
        x[f] = 1;
        back_substitute(e, n, x);
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace qpoly

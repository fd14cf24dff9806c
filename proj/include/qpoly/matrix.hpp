#ifndef QPOLY_MATRIX_HPP
#define QPOLY_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "qpoly/rational.hpp"

namespace qpoly {

// Dense rational matrix, row major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void append_row(const std::vector<Rational>& row);
    std::vector<Rational> row(std::size_t i) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// Rank by fraction-free (Bareiss) elimination on denominator-cleared rows.
// Pivot choice is deterministic: for each column in order, the first row
// (top to bottom) with a nonzero entry.
std::size_t rank(const QMatrix& m);

// One exact solution of A x = b if the system is consistent (free variables
// set to 0), std::nullopt otherwise.
std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b);

// Basis of {x : A x = 0}, one vector per free column with that coordinate 1.
std::vector<std::vector<Rational>> nullspace(const QMatrix& a);

}  // namespace qpoly

#endif

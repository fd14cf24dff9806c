#ifndef QPOLY_LP_HPP
#define QPOLY_LP_HPP

#include <cstddef>
#include <vector>

#include "qpoly/rational.hpp"

namespace qpoly {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// One constraint a.x rel rhs with rel in {'<', '=', '>'} meaning <=, =, >=.
struct LpRow {
    std::vector<Rational> a;
    char rel = '<';
    Rational rhs = 0;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational objective = 0;
    std::vector<Rational> x;  // a maximizer when status == Optimal
};

// Exact maximization of objective.x over free variables subject to rows.
// Two-phase primal simplex with Bland's rule; terminates on all inputs.
LpResult lp_maximize(std::size_t nvars, const std::vector<LpRow>& rows,
                     const std::vector<Rational>& objective);

}  // namespace qpoly

#endif

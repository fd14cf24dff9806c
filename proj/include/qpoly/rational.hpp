#ifndef QPOLY_RATIONAL_HPP
#define QPOLY_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qpoly {

// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
// denominator) through arithmetic; the functions below add the strict text
// format used in polytope files and scripts.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts an optional sign, a decimal integer, and an optional "/" followed
// by a positive decimal integer denominator: "1", "-27", "3/2000". A
// non-reduced fraction like "318/10" is accepted and normalized. Decimal
// points, exponents, whitespace, and empty fields are rejected.
Rational parse_rational(std::string_view text);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 1.
std::string to_string(const Rational& q);

std::string to_string(const std::vector<Rational>& v);

}  // namespace qpoly

#endif

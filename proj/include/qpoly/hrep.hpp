#ifndef QPOLY_HREP_HPP
#define QPOLY_HREP_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qpoly/rational.hpp"

namespace qpoly {

// One halfspace: inward normal on the flat {1} x R^dim, so a point
// v = (1, x1..xd) is feasible when normal . v >= 0 and tight when = 0.
struct Facet {
    std::string label;
    std::vector<Rational> normal;  // dim + 1 entries
};

struct HPolytope {
    std::size_t dim = 0;
    std::vector<Facet> facets;

    std::size_t index(const std::string& label) const;
    bool has(const std::string& label) const;
    std::vector<std::string> labels() const;
};

struct ValidationReport {
    std::vector<std::string> warnings;  // e.g. facets never tight on the body
};

// Structural and geometric validation: every normal has dim+1 entries,
// labels unique and nonempty, feasible set nonempty and bounded. Throws
// InputError on failure; facets that are never tight only produce warnings.
ValidationReport validate_polytope(const HPolytope& p);

// Reads the structured text document {"dim": d, "facets": [{label, normal}]}.
// Validates after parsing; warnings, when wanted, land in *report.
HPolytope parse_polytope(std::istream& in, ValidationReport* report = nullptr);
HPolytope load_polytope(const std::string& path, ValidationReport* report = nullptr);

// Canonical re-emission: same document shape, rationals in canonical form.
void serialize_polytope(const HPolytope& p, std::ostream& out);

// Dot product of a facet normal with a homogeneous point.
Rational facet_dot(const Facet& f, const std::vector<Rational>& v);

}  // namespace qpoly

#endif

#ifndef QPOLY_TESTS_FIXTURES_HPP
#define QPOLY_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "qpoly/hrep.hpp"

namespace qpoly::testing {

inline Facet facet(const std::string& label, const std::vector<int>& normal) {
    Facet f;
    f.label = label;
    for (int x : normal) f.normal.push_back(x);
    return f;
}

// [-1,1]^3.
inline HPolytope cube3() {
    HPolytope p;
    p.dim = 3;
    p.facets = {facet("f1", {1, 1, 0, 0}),  facet("f2", {1, -1, 0, 0}), facet("f3", {1, 0, 1, 0}),
                facet("f4", {1, 0, -1, 0}), facet("f5", {1, 0, 0, 1}),  facet("f6", {1, 0, 0, -1})};
    return p;
}

// Pyramid with apex (0,0,2) over the hexagon (+-2,0), (+-1,+-1): the apex
// lies on six facets in dim 3, a (k=0, m=6, excess 3) nonsimplicity.
inline HPolytope hexpyr() {
    HPolytope p;
    p.dim = 3;
    p.facets = {facet("base", {0, 0, 0, 1}),
                facet("s1", {2, -1, -1, -1}),
                facet("s2", {2, 0, -2, -1}),
                facet("s3", {2, 1, -1, -1}),
                facet("s4", {2, 1, 1, -1}),
                facet("s5", {2, 0, 2, -1}),
                facet("s6", {2, -1, 1, -1})};
    return p;
}

// Pyramid with apex (0,0,1) over the square (+-1,+-1): one nonsimple vertex
// of excess 1.
inline HPolytope sqpyr() {
    HPolytope p;
    p.dim = 3;
    p.facets = {facet("base", {0, 0, 0, 1}),
                facet("s1", {1, -1, 0, -1}),
                facet("s2", {1, 1, 0, -1}),
                facet("s3", {1, 0, -1, -1}),
                facet("s4", {1, 0, 1, -1})};
    return p;
}

// Simplex in dim 4.
inline HPolytope simplex4() {
    HPolytope p;
    p.dim = 4;
    p.facets = {facet("g0", {1, -1, -1, -1, -1}), facet("g1", {0, 1, 0, 0, 0}),
                facet("g2", {0, 0, 1, 0, 0}), facet("g3", {0, 0, 0, 1, 0}), facet("g4", {0, 0, 0, 0, 1})};
    return p;
}

// Square [-1,1]^2.
inline HPolytope square() {
    HPolytope p;
    p.dim = 2;
    p.facets = {facet("e1", {1, 1, 0}), facet("e2", {1, -1, 0}), facet("e3", {1, 0, 1}),
                facet("e4", {1, 0, -1})};
    return p;
}

// Hexagon (+-2,0), (+-1,+-1): no vertex pair covers all six edges.
inline HPolytope hexagon2() {
    HPolytope p;
    p.dim = 2;
    p.facets = {facet("e1", {2, -1, -1}), facet("e2", {1, 0, -1}), facet("e3", {2, 1, -1}),
                facet("e4", {2, 1, 1}),   facet("e5", {1, 0, 1}),  facet("e6", {2, -1, 1})};
    return p;
}

// Random bounded body: a unit box plus a few extra cuts, origin strictly
// inside every row.
template <class Rng>
HPolytope random_polytope(Rng& rng) {
    std::size_t dim = 2 + rng() % 2;
    HPolytope p;
    p.dim = dim;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<int> lo(dim + 1, 0), hi(dim + 1, 0);
        lo[0] = hi[0] = 1;
        lo[j + 1] = 1;
        hi[j + 1] = -1;
        p.facets.push_back(facet("lo" + std::to_string(j), lo));
        p.facets.push_back(facet("hi" + std::to_string(j), hi));
    }
    std::size_t cuts = 2 + rng() % 4;
    for (std::size_t c = 0; c < cuts; ++c) {
        std::vector<int> row(dim + 1, 0);
        row[0] = 1 + static_cast<int>(rng() % 3);
        bool nonzero = false;
        for (std::size_t j = 1; j <= dim; ++j) {
            row[j] = static_cast<int>(rng() % 7) - 3;
            if (row[j] != 0) nonzero = true;
        }
        if (!nonzero) row[1] = 1;
        p.facets.push_back(facet("cut" + std::to_string(c), row));
    }
    return p;
}

inline std::string spindle_path() { return std::string(QPOLY_SOURCE_DIR) + "/data/p5_spindle"; }
inline std::string scripts_dir() { return std::string(QPOLY_SOURCE_DIR) + "/scripts"; }

}  // namespace qpoly::testing

#endif

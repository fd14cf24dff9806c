#ifndef QPOLY_FACES_HPP
#define QPOLY_FACES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qpoly/enumerate.hpp"
#include "qpoly/hrep.hpp"
#include "qpoly/rational.hpp"

namespace qpoly {

struct RelIntResult {
    bool empty = false;          // no point of the body is tight on all of S
    Rational margin;             // best uniform slack over facets outside S, capped at 1
    std::vector<Rational> point; // homogeneous (1, x...); tight set is exactly S when margin > 0
};

// Max-slack program for the face cut out by the support S (facet indices).
RelIntResult relative_interior_point(const HPolytope& p, const std::vector<std::size_t>& support);

// Dimension of the affine span of the rows in S: dim - rank. Returns -1 when
// the rows span the full homogeneous space (empty face).
long face_dimension(const HPolytope& p, const std::vector<std::size_t>& support);

// All facets whose row lies in the row span of S; contains S. Ascending.
std::vector<std::size_t> support_closure(const HPolytope& p, const std::vector<std::size_t>& support);

struct AffineSupportResult {
    std::size_t excess = 0;                // dimension of the row dependence space
    std::vector<std::size_t> essential;    // facets of S with zero coefficient in every dependence
    bool holds = false;                    // no essential facet (trivially true at excess 0)
};

AffineSupportResult affine_support_check(const HPolytope& p, const std::vector<std::size_t>& support);

struct FaceRecord {
    std::vector<std::size_t> support;  // ascending facet indices, closed under span
    std::vector<std::string> labels;   // same order
    std::size_t k = 0;                 // face dimension
    std::size_t m = 0;                 // support size
    std::size_t excess = 0;            // m - (dim - k)
    std::vector<Rational> witness;     // relative interior point, homogeneous
};

// Builds the record for a support set: closure, dimension, excess, witness.
FaceRecord make_face_record(const HPolytope& p, const std::vector<std::size_t>& support);

// Rechecks a record from scratch: nonempty face, support closed and exactly
// the tight set of the witness, consistent k/m/excess. Throws VerifyError.
void verify_nonsimplicity(const HPolytope& p, const FaceRecord& rec);

// Walks closures of nonsimple vertex supports, splitting along essential
// facets until the affine support condition holds; returns the faces with
// positive excess, sorted by (k, support).
std::vector<FaceRecord> find_nonsimplicities(const HPolytope& p, const std::vector<VertexRecord>& verts);

std::string support_to_string(const FaceRecord& rec);

}  // namespace qpoly

#endif

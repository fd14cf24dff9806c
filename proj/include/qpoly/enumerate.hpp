#ifndef QPOLY_ENUMERATE_HPP
#define QPOLY_ENUMERATE_HPP

#include <cstdint>
#include <vector>

#include "qpoly/hrep.hpp"
#include "qpoly/rational.hpp"

namespace qpoly {

struct VertexRecord {
    std::vector<Rational> coords;  // homogeneous, coords[0] == 1
    std::uint64_t inc_mask = 0;    // bit i set when facet i is tight
    std::vector<std::uint32_t> inc;  // tight facet indices, ascending
};

struct EnumOptions {
    // Maximum number of full d-subsets examined before BudgetError.
    std::uint64_t max_candidates = 10'000'000;
    // 0 = QPOLY_WORKERS environment variable, else hardware concurrency.
    unsigned workers = 0;
};

// All vertices as basic feasible intersections of d facet rows, found by a
// lexicographic subset scan with incremental rank pruning. Deterministic:
// output sorted by coordinates, identical for any worker count.
std::vector<VertexRecord> enumerate_vertices(const HPolytope& p, const EnumOptions& opt = {});

// Number of full d-subsets a complete scan may examine (caps at 2^63).
std::uint64_t subset_bound(std::size_t nfacets, std::size_t dim);

// u and v are adjacent iff no third vertex lies on every facet common to
// u and v (the face they generate is then the edge [u,v]). Valid for
// nonsimple polytopes; needs the complete vertex list.
std::vector<std::vector<std::uint32_t>> adjacency_graph(const std::vector<VertexRecord>& verts);

bool is_simple_vertex(const HPolytope& p, const VertexRecord& v);

}  // namespace qpoly

#endif

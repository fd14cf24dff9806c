#ifndef QPOLY_PATHS_HPP
#define QPOLY_PATHS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qpoly/enumerate.hpp"
#include "qpoly/hrep.hpp"

namespace qpoly {

// Breadth-first distances from one vertex; SIZE_MAX marks unreachable.
std::vector<std::size_t> bfs_distances(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t from);

// Exact graph distance; throws on disconnection (an upstream bug for polytopes).
std::size_t distance(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t a, std::size_t b);

// The unique vertex pair covering every facet by incidence. Throws
// VerifyError when no pair or more than one pair covers.
std::pair<std::size_t, std::size_t> spindle_check(const HPolytope& p, const std::vector<VertexRecord>& verts);

// True iff every vertex other than x and y lies on exactly dim facets.
bool all_but_simple_check(const HPolytope& p, const std::vector<VertexRecord>& verts,
                          std::size_t x, std::size_t y);

struct NonrevisitOptions {
    std::uint64_t max_states = 10'000'000;
};

// Depth-first search for a path that never rejoins a facet it left: a step
// to w is allowed iff every already-seen facet of w is on the current
// vertex. Memoized on (vertex, seen facet set); any witness is recheck by
// the contiguity criterion before being returned.
std::optional<std::vector<std::size_t>> nonrevisiting_path(const HPolytope& p,
                                                           const std::vector<VertexRecord>& verts,
                                                           const std::vector<std::vector<std::uint32_t>>& adj,
                                                           std::size_t from, std::size_t to,
                                                           const NonrevisitOptions& opt = {});

// Every facet's incidence along the path forms one contiguous interval.
bool contiguous_incidence(const HPolytope& p, const std::vector<VertexRecord>& verts,
                          const std::vector<std::size_t>& path);

// delta - (n - d): positive violates the Hirsch bound.
long hirsch_gap(std::size_t nfacets, std::size_t dim, std::size_t delta);

// The unique vertex whose incidence contains every named facet.
std::size_t find_vertex_by_incidence(const HPolytope& p, const std::vector<VertexRecord>& verts,
                                     const std::vector<std::string>& labels);

}  // namespace qpoly

#endif

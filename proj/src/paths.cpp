#include "qpoly/paths.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "qpoly/errors.hpp"

namespace qpoly {

std::vector<std::size_t> bfs_distances(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t from) {
    std::vector<std::size_t> dist(adj.size(), static_cast<std::size_t>(-1));
    std::deque<std::size_t> q;
    dist[from] = 0;
    q.push_back(from);
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop_front();
        for (std::uint32_t w : adj[u]) {
            if (dist[w] != static_cast<std::size_t>(-1)) continue;
            dist[w] = dist[u] + 1;
            q.push_back(w);
        }
    }
    return dist;
}

std::size_t distance(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t a, std::size_t b) {
    std::vector<std::size_t> d = bfs_distances(adj, a);
    if (d[b] == static_cast<std::size_t>(-1)) throw Error("vertex graph is disconnected");
    return d[b];
}

std::pair<std::size_t, std::size_t> spindle_check(const HPolytope& p, const std::vector<VertexRecord>& verts) {
    const std::size_t n = p.facets.size();
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<std::pair<std::size_t, std::size_t>> covering;
    for (std::size_t u = 0; u < verts.size(); ++u)
        for (std::size_t v = u + 1; v < verts.size(); ++v)
            if ((verts[u].inc_mask | verts[v].inc_mask) == full) covering.emplace_back(u, v);
    if (covering.empty()) throw VerifyError("not a spindle: no vertex pair covers every facet");
    if (covering.size() > 1)
        throw VerifyError("not a spindle: ambiguous apex pair (" + std::to_string(covering.size()) +
                          " covering pairs)");
    return covering.front();
}

bool all_but_simple_check(const HPolytope& p, const std::vector<VertexRecord>& verts,
                          std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i == x || i == y) continue;
        if (verts[i].inc.size() != p.dim) return false;
    }
    return true;
}

std::optional<std::vector<std::size_t>> nonrevisiting_path(const HPolytope& p,
                                                           const std::vector<VertexRecord>& verts,
                                                           const std::vector<std::vector<std::uint32_t>>& adj,
                                                           std::size_t from, std::size_t to,
                                                           const NonrevisitOptions& opt) {
    std::set<std::pair<std::size_t, std::uint64_t>> failed;
    std::vector<std::size_t> path{from};
    std::uint64_t states = 0;

    // Returns true when `to` was reached; `seen` is the union of incidences
    // along the current path.
    auto dfs = [&](auto&& self, std::size_t u, std::uint64_t seen) -> bool {
        if (u == to) return true;
        if (++states > opt.max_states) throw BudgetError("nonrevisiting search exceeded the state budget");
        if (failed.count({u, seen})) return false;
        for (std::uint32_t w : adj[u]) {
            std::uint64_t wm = verts[w].inc_mask;
            if ((wm & seen & ~verts[u].inc_mask) != 0) continue;  // would rejoin a departed facet
            if (std::find(path.begin(), path.end(), static_cast<std::size_t>(w)) != path.end()) continue;
            path.push_back(w);
            if (self(self, w, seen | wm)) return true;
            path.pop_back();
        }
        failed.insert({u, seen});
        return false;
    };
    if (!dfs(dfs, from, verts[from].inc_mask)) return std::nullopt;
    if (!contiguous_incidence(p, verts, path)) throw Error("internal: witness path fails contiguity");
    return path;
}

bool contiguous_incidence(const HPolytope& p, const std::vector<VertexRecord>& verts,
                          const std::vector<std::size_t>& path) {
    for (std::size_t g = 0; g < p.facets.size(); ++g) {
        bool on = false, done = false;
        for (std::size_t i = 0; i < path.size(); ++i) {
            bool tight = (verts[path[i]].inc_mask >> g) & 1;
            if (tight) {
                if (done) return false;  // rejoined after leaving
                on = true;
            } else if (on) {
                done = true;
            }
        }
    }
    return true;
}

long hirsch_gap(std::size_t nfacets, std::size_t dim, std::size_t delta) {
    return static_cast<long>(delta) - (static_cast<long>(nfacets) - static_cast<long>(dim));
}

std::size_t find_vertex_by_incidence(const HPolytope& p, const std::vector<VertexRecord>& verts,
                                     const std::vector<std::string>& labels) {
    std::uint64_t mask = 0;
    for (const auto& l : labels) mask |= std::uint64_t{1} << p.index(l);
    std::size_t found = verts.size();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if ((verts[i].inc_mask & mask) != mask) continue;
        if (found != verts.size()) throw InputError("facet set does not select a unique vertex");
        found = i;
    }
    if (found == verts.size()) throw InputError("no vertex is tight on the given facet set");
    return found;
}

}  // namespace qpoly

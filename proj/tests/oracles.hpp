#ifndef QPOLY_TESTS_ORACLES_HPP
#define QPOLY_TESTS_ORACLES_HPP

// Independent reference implementations used only to check the library.
// Everything here is deliberately written against raw gmpxx types with
// plain Gauss-Jordan elimination and exhaustive subset scans, sharing no
// code with the library under test.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace oracle {

using Q = mpq_class;
using Mat = std::vector<std::vector<Q>>;

// Plain Gauss-Jordan echelon form, partial pivot = first nonzero scanning
// down each column. Returns rank; M is reduced in place.
inline std::size_t gauss(Mat& M) {
    if (M.empty()) return 0;
    const std::size_t rows = M.size(), cols = M[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && M[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[r], M[piv]);
        const Q inv = M[r][c];
        for (std::size_t j = 0; j < cols; ++j) M[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            const Q f = M[i][c];
            for (std::size_t j = 0; j < cols; ++j) M[i][j] -= f * M[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(Mat M) { return gauss(M); }

// Basis of the right nullspace {w : Mw = 0}; each basis vector sets one
// free column to 1.
inline Mat nullspace(Mat M) {
    if (M.empty()) return {};
    const std::size_t cols = M[0].size();
    gauss(M);
    std::vector<long> pivot_of_col(cols, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (r < M.size() && M[r][c] != 0) pivot_of_col[c] = static_cast<long>(r++);
    }
    Mat basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot_of_col[f] != -1) continue;
        std::vector<Q> w(cols, 0);
        w[f] = 1;
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_of_col[c] != -1) w[c] = -M[static_cast<std::size_t>(pivot_of_col[c])][f];
        }
        basis.push_back(std::move(w));
    }
    return basis;
}

struct Poly {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    Mat rows;  // n x (dim+1), inward normals on the flat {1} x R^dim

    std::size_t index(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw std::runtime_error("oracle: no facet " + label);
    }
};

inline Poly load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("oracle: cannot open " + path);
    nlohmann::json j;
    in >> j;
    Poly p;
    p.dim = j.at("dim").get<std::size_t>();
    for (const auto& f : j.at("facets")) {
        p.labels.push_back(f.at("label").get<std::string>());
        std::vector<Q> row;
        for (const auto& s : f.at("normal")) {
            Q q(s.get<std::string>());
            q.canonicalize();
            row.push_back(q);
        }
        if (row.size() != p.dim + 1) throw std::runtime_error("oracle: bad row width");
        p.rows.push_back(std::move(row));
    }
    return p;
}

struct Vertex {
    std::vector<Q> coords;      // (1, x1..xd)
    std::set<std::size_t> inc;  // indices of tight facets
};

inline Q dot(const std::vector<Q>& a, const std::vector<Q>& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Exhaustive vertex enumeration: every d-subset of facet rows, solved by
// Gauss-Jordan. Only meant for small instances.
inline std::vector<Vertex> enumerate_vertices(const Poly& p) {
    const std::size_t n = p.rows.size(), d = p.dim;
    std::vector<std::size_t> idx(d);
    std::map<std::vector<Q>, Vertex> seen;

    std::vector<std::size_t> comb(d);
    for (std::size_t i = 0; i < d; ++i) comb[i] = i;
    auto advance = [&]() -> bool {
        std::size_t i = d;
        while (i-- > 0) {
            if (comb[i] != i + n - d) {
                ++comb[i];
                for (std::size_t j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    if (n < d) return {};
    while (true) {
        Mat M;
        for (std::size_t i : comb) M.push_back(p.rows[i]);
        Mat ns = nullspace(M);
        if (ns.size() == 1 && ns[0][0] != 0) {
            std::vector<Q> v = ns[0];
            const Q w0 = v[0];
            for (auto& c : v) c /= w0;
            bool feasible = true;
            for (const auto& row : p.rows) {
                if (dot(row, v) < 0) { feasible = false; break; }
            }
            if (feasible && !seen.count(v)) {
                Vertex vert;
                vert.coords = v;
                for (std::size_t i = 0; i < n; ++i)
                    if (dot(p.rows[i], v) == 0) vert.inc.insert(i);
                seen.emplace(v, std::move(vert));
            }
        }
        if (!advance()) break;
    }
    std::vector<Vertex> out;
    for (auto& [k, v] : seen) out.push_back(std::move(v));
    return out;
}

// u,v adjacent iff the smallest face containing both is 1-dimensional,
// i.e. the common tight rows have rank d-1 in homogeneous coordinates.
inline bool adjacent(const Poly& p, const Vertex& u, const Vertex& v) {
    std::vector<std::size_t> common;
    std::set_intersection(u.inc.begin(), u.inc.end(), v.inc.begin(), v.inc.end(),
                          std::back_inserter(common));
    Mat M;
    for (std::size_t i : common) M.push_back(p.rows[i]);
    return rank(std::move(M)) == p.dim - 1;
}

inline std::vector<std::vector<std::size_t>> graph(const Poly& p,
                                                   const std::vector<Vertex>& vs) {
    std::vector<std::vector<std::size_t>> adj(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (adjacent(p, vs[i], vs[j])) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;
}

inline int bfs_distance(const std::vector<std::vector<std::size_t>>& adj,
                        std::size_t from, std::size_t to) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<std::size_t> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop();
        if (u == to) return dist[u];
        for (std::size_t w : adj[u])
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return -1;
}

// One nonsimple-face record computed purely from vertex sets.
struct FaceInfo {
    std::set<std::size_t> support;  // facets tight on the whole face
    int k = 0;                      // face dimension
    int m = 0;                      // support size
    int excess = 0;
};

// All faces as closed tight-sets: intersect incidence sets of vertex
// subsets, closing the family under pairwise intersection.
inline std::vector<FaceInfo> nonsimple_faces(const Poly& p, const std::vector<Vertex>& vs) {
    std::set<std::set<std::size_t>> tight_sets;
    for (const auto& v : vs) tight_sets.insert(v.inc);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::set<std::size_t>> cur(tight_sets.begin(), tight_sets.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                std::set<std::size_t> inter;
                std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(),
                                      cur[j].end(), std::inserter(inter, inter.begin()));
                if (tight_sets.insert(inter).second) grew = true;
            }
    }

    std::vector<FaceInfo> out;
    for (const auto& S : tight_sets) {
        // Face dimension from the vertices lying on all of S.
        Mat pts;
        for (const auto& v : vs) {
            bool on = true;
            for (std::size_t i : S)
                if (!v.inc.count(i)) { on = false; break; }
            if (on) pts.push_back(v.coords);
        }
        if (pts.empty()) continue;
        const int k = static_cast<int>(rank(pts)) - 1;
        const int m = static_cast<int>(S.size());
        const int excess = m - (static_cast<int>(p.dim) - k);
        if (excess <= 0) continue;

        // Support must be exactly the facets tight on every such vertex.
        // (True by construction: S came from incidence intersections.)

        // Affine-support condition: no facet of S may have coefficient
        // zero in every dependence, i.e. removing any one row must keep
        // the rank. Checked by rank drops.
        Mat all;
        for (std::size_t i : S) all.push_back(p.rows[i]);
        const std::size_t full = rank(all);
        bool holds = true;
        std::size_t at = 0;
        for (std::size_t skip : S) {
            (void)skip;
            Mat sub;
            std::size_t pos = 0;
            for (std::size_t i : S) {
                if (pos != at) sub.push_back(p.rows[i]);
                ++pos;
            }
            if (rank(std::move(sub)) < full) { holds = false; break; }
            ++at;
        }
        if (!holds) continue;

        FaceInfo f;
        f.support = S;
        f.k = k;
        f.m = m;
        f.excess = excess;
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace oracle

#endif

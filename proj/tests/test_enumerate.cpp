#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "qpoly/enumerate.hpp"
#include "qpoly/errors.hpp"
#include "qpoly/hrep.hpp"

using namespace qpoly;
using namespace qpoly::testing;

TEST_CASE("subset bound") {
    CHECK(subset_bound(6, 3) == 20);
    CHECK(subset_bound(25, 5) == 53130);
    CHECK(subset_bound(29, 9) == 10015005);
    CHECK(subset_bound(31, 8) == 7888725);
    CHECK(subset_bound(4, 5) == 0);
    CHECK(subset_bound(64, 32) == 1832624140942590534ull);    // exact, still below the cap
    CHECK(subset_bound(70, 35) == (std::uint64_t{1} << 63));  // capped
}

TEST_CASE("cube vertices") {
    auto verts = enumerate_vertices(cube3());
    REQUIRE(verts.size() == 8);
    for (const auto& v : verts) {
        CHECK(v.coords[0] == 1);
        CHECK(v.inc.size() == 3);
        for (auto c : {v.coords[1], v.coords[2], v.coords[3]}) CHECK(abs(c) == 1);
    }
    // sorted by coordinates, first is (-1,-1,-1)
    CHECK(verts.front().coords == std::vector<Rational>{1, -1, -1, -1});
    CHECK(verts.back().coords == std::vector<Rational>{1, 1, 1, 1});
}

TEST_CASE("incidence data is consistent") {
    HPolytope p = hexpyr();
    auto verts = enumerate_vertices(p);
    REQUIRE(verts.size() == 7);
    for (const auto& v : verts) {
        std::uint64_t mask = 0;
        for (auto i : v.inc) mask |= std::uint64_t{1} << i;
        CHECK(mask == v.inc_mask);
        CHECK(std::is_sorted(v.inc.begin(), v.inc.end()));
        for (std::size_t g = 0; g < p.facets.size(); ++g) {
            bool tight = facet_dot(p.facets[g], v.coords) == 0;
            CHECK(tight == (((v.inc_mask >> g) & 1) != 0));
        }
    }
    std::size_t apex_count = 0;
    for (const auto& v : verts)
        if (v.inc.size() == 6) ++apex_count;
    CHECK(apex_count == 1);
}

TEST_CASE("simplex has dim+1 simple vertices") {
    HPolytope p = simplex4();
    auto verts = enumerate_vertices(p);
    REQUIRE(verts.size() == 5);
    for (const auto& v : verts) CHECK(is_simple_vertex(p, v));
}

TEST_CASE("bundled spindle enumerates to the known vertex set") {
    HPolytope p = load_polytope(spindle_path());
    auto verts = enumerate_vertices(p);
    CHECK(verts.size() == 244);
    std::vector<Rational> x = {1, Rational(-1, 100), 0, 0, 0, 0};
    std::vector<Rational> y = {1, Rational(1, 100), 0, 0, 0, 0};
    std::size_t found = 0;
    for (const auto& v : verts) {
        if (v.coords == x) {
            ++found;
            CHECK(v.inc.size() == 12);
            CHECK(v.inc.front() == p.index("h1"));
            CHECK(v.inc.back() == p.index("h12"));
        }
        if (v.coords == y) {
            ++found;
            CHECK(v.inc.size() == 13);
            CHECK(v.inc.front() == p.index("h21"));
            CHECK(v.inc.back() == p.index("h33"));
        }
    }
    CHECK(found == 2);
}

TEST_CASE("worker count does not change the output") {
    HPolytope p = load_polytope(spindle_path());
    EnumOptions one, three;
    one.workers = 1;
    three.workers = 3;
    auto a = enumerate_vertices(p, one);
    auto b = enumerate_vertices(p, three);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].coords == b[i].coords);
        CHECK(a[i].inc == b[i].inc);
    }
}

TEST_CASE("budget exhaustion throws") {
    HPolytope p = load_polytope(spindle_path());
    EnumOptions opt;
    opt.max_candidates = 100;
    CHECK_THROWS_AS(enumerate_vertices(p, opt), BudgetError);
}

TEST_CASE("budget equal to the subset bound suffices") {
    HPolytope p = cube3();
    EnumOptions opt;
    opt.max_candidates = subset_bound(6, 3);
    CHECK(enumerate_vertices(p, opt).size() == 8);
}

TEST_CASE("cube adjacency is the 3-regular graph") {
    auto verts = enumerate_vertices(cube3());
    auto adj = adjacency_graph(verts);
    for (std::size_t u = 0; u < adj.size(); ++u) {
        CHECK(adj[u].size() == 3);
        for (auto v : adj[u]) {
            // neighbors differ in exactly one coordinate
            int diff = 0;
            for (std::size_t j = 1; j <= 3; ++j)
                if (verts[u].coords[j] != verts[v].coords[j]) ++diff;
            CHECK(diff == 1);
        }
    }
}

TEST_CASE("pyramid apex is adjacent to every base vertex") {
    auto verts = enumerate_vertices(sqpyr());
    REQUIRE(verts.size() == 5);
    auto adj = adjacency_graph(verts);
    std::size_t apex = 0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (verts[i].inc.size() == 4) apex = i;
    CHECK(adj[apex].size() == 4);
}

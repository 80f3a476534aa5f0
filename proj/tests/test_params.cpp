#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>

#include "fair/params.hpp"
#include "testutil.hpp"

using namespace fair;
using namespace testutil;

namespace {

// exhaustive oracle: minimum size of a set covering every non-twin edge
int brute_min_twin_cover_size(const Graph& g) {
    int n = g.vertex_count();
    std::vector<std::pair<int, int>> hard;
    for (auto [u, v] : g.edges())
        if (!is_twin_edge(g, u, v)) hard.emplace_back(u, v);
    for (int size = 0; size <= n; ++size) {
        for (uint64_t m = 0; m < (uint64_t(1) << n); ++m) {
            if (std::popcount(m) != size) continue;
            bool ok = true;
            for (auto [u, v] : hard)
                if (!((m >> u) & 1) && !((m >> v) & 1)) {
                    ok = false;
                    break;
                }
            if (ok) return size;
        }
    }
    return n;
}

void check_cover_decomposition(const Graph& g, const TwinCover& tc) {
    // components of G\K are cliques with identical closed neighborhoods
    std::set<int> covered(tc.cover.begin(), tc.cover.end());
    int outside = 0;
    for (const auto& c : tc.cliques) {
        outside += static_cast<int>(c.vertices.size());
        for (size_t i = 0; i < c.vertices.size(); ++i) {
            for (size_t j = i + 1; j < c.vertices.size(); ++j) {
                CHECK(g.has_edge(c.vertices[i], c.vertices[j]));
                Bitset a = g.neighbor_mask(c.vertices[i]);
                Bitset b = g.neighbor_mask(c.vertices[j]);
                a.set(c.vertices[i]);
                b.set(c.vertices[j]);
                CHECK(a == b); // equal closed neighborhoods
            }
            // cover set matches N(v) ∩ K
            std::vector<int> ks;
            for (int w : g.neighbors(c.vertices[i]))
                if (covered.count(w)) ks.push_back(w);
            CHECK(VertexSet(ks) == c.cover_set);
        }
    }
    CHECK(outside + tc.cover.size() == g.vertex_count());
}

} // namespace

TEST_CASE("is_twin_edge") {
    Graph k3 = complete(3);
    CHECK(is_twin_edge(k3, 0, 1));
    CHECK(is_twin_edge(k3, 1, 2));

    Graph p3 = path(3); // a-b-c
    CHECK_FALSE(is_twin_edge(p3, 0, 1));
    CHECK_THROWS_AS(is_twin_edge(p3, 0, 2), invalid_input_error);

    // K4 minus the edge {0,1}: all five edges checked against the definition
    Graph k4m(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    for (auto [u, v] : k4m.edges()) {
        Bitset nu = k4m.neighbor_mask(u), nv = k4m.neighbor_mask(v);
        nu.reset(v);
        nv.reset(u);
        CHECK(is_twin_edge(k4m, u, v) == (nu == nv));
    }
    CHECK(is_twin_edge(k4m, 2, 3));
    CHECK_FALSE(is_twin_edge(k4m, 0, 2));
}

TEST_CASE("min_twin_cover on named graphs") {
    auto kn = min_twin_cover(complete(6));
    REQUIRE(kn.has_value());
    CHECK(kn->cover.empty());
    REQUIRE(kn->cliques.size() == 1);
    CHECK(kn->cliques[0].vertices.size() == 6);
    CHECK(kn->cliques[0].cover_set.empty());

    auto st = min_twin_cover(star(4));
    REQUIRE(st.has_value());
    CHECK(st->cover == VertexSet{0});
    CHECK(st->cliques.size() == 4);
    for (const auto& c : st->cliques) {
        CHECK(c.vertices.size() == 1);
        CHECK(c.cover_set == VertexSet{0});
    }
    CHECK(brute_min_twin_cover_size(star(4)) == 1);

    auto p4 = min_twin_cover(path(4));
    REQUIRE(p4.has_value());
    CHECK(p4->cover.size() == 2);
    CHECK(brute_min_twin_cover_size(path(4)) == 2);

    CHECK_FALSE(min_twin_cover(path(4), 1).has_value());
    CHECK(min_twin_cover(path(4), 2).has_value());
}

TEST_CASE("min_twin_cover minimality and decomposition on random graphs") {
    Rng rng(4242);
    for (int iter = 0; iter < 80; ++iter) {
        int n = 2 + rng.below(iter % 4 == 0 ? 11 : 8); // exhaustive oracle up to n = 12
        double p = iter % 3 == 0 ? 0.2 : iter % 3 == 1 ? 0.5 : 0.8;
        Graph g = erdos_renyi(n, p, rng);
        auto tc = min_twin_cover(g);
        REQUIRE(tc.has_value());
        CHECK(tc->cover.size() == brute_min_twin_cover_size(g));
        check_cover_decomposition(g, *tc);
        // every edge is a twin edge or covered
        for (auto [u, v] : g.edges())
            if (!tc->cover.contains(u) && !tc->cover.contains(v)) CHECK(is_twin_edge(g, u, v));
    }
}

TEST_CASE("twin_classes") {
    LabeledGraph kn;
    kn.graph = complete(5);
    CHECK(twin_classes(kn).size() == 1);

    LabeledGraph c4;
    c4.graph = cycle(4);
    // equal open neighborhoods but closed neighborhoods differ: 4 singletons
    CHECK(twin_classes(c4).size() == 4);

    LabeledGraph k4;
    k4.graph = complete(4);
    k4.add_label("mark", VertexSet{0});
    auto cls = twin_classes(k4);
    REQUIRE(cls.size() == 2);
    CHECK(cls[0] == std::vector<int>{0});
    CHECK(cls[1] == std::vector<int>{1, 2, 3});
}

TEST_CASE("twin class members are exchangeable by automorphism") {
    Rng rng(11);
    for (int iter = 0; iter < 40; ++iter) {
        int n = 2 + rng.below(7);
        Graph g = erdos_renyi(n, 0.5, rng);
        LabeledGraph lg{g, {}};
        for (const auto& cls : twin_classes(lg)) {
            if (cls.size() < 2) continue;
            int a = cls[0], b = cls[1];
            // swapping a and b yields the same edge set
            std::vector<std::pair<int, int>> swapped;
            auto sw = [&](int v) { return v == a ? b : v == b ? a : v; };
            for (auto [u, v] : g.edges()) swapped.emplace_back(sw(u), sw(v));
            CHECK(Graph(n, swapped) == g);
        }
    }
}

TEST_CASE("neighborhood_diversity") {
    CHECK(neighborhood_diversity(complete(5)).count == 1);
    CHECK(neighborhood_diversity(cycle(5)).count == 5);
    auto k23 = neighborhood_diversity(complete_multipartite({2, 3}));
    CHECK(k23.count == 2);
    REQUIRE(k23.classes.size() == 2);
    CHECK(k23.classes[0].size() + k23.classes[1].size() == 5);
}

TEST_CASE("twin cover validation") {
    CHECK_THROWS_AS(twin_cover_from(path(3), VertexSet{}), invalid_input_error);
    auto ok = twin_cover_from(path(3), VertexSet{1});
    CHECK(ok.cliques.size() == 2);
}

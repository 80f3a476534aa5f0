#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fair/fairvc.hpp"
#include "testutil.hpp"

using namespace fair;
using namespace testutil;

namespace {

void check_witness(const Graph& g, const FairVcSolution& s) {
    CHECK(is_vertex_cover(g, s.cover));
    CHECK(fair_cost(g, s.cover) <= s.cost);
}

void cross_check(const Graph& g) {
    FairVcSolution dp = solve_dp(g);
    FairVcSolution brute = solve_brute(g);
    CHECK(dp.cost == brute.cost);
    check_witness(g, dp);
    check_witness(g, brute);
    CHECK(solve_bnb(g, dp.cost).decision == Decision::yes);
    if (dp.cost > 0) CHECK(solve_bnb(g, dp.cost - 1).decision == Decision::no);
}

} // namespace

TEST_CASE("brute on tiny graphs") {
    FairVcSolution k2 = solve_brute(complete(2));
    CHECK(k2.cost == 1);
    CHECK(k2.cover == VertexSet{0}); // lexicographic tie-break

    FairVcSolution empty = solve_brute(Graph(4));
    CHECK(empty.cost == 0);
    CHECK(empty.cover.empty());

    CHECK_THROWS_AS(solve_brute(complete(24), 22), resource_limit_error);
}

TEST_CASE("dp on named graphs") {
    FairVcSolution st = solve_dp(star(4));
    CHECK(st.cost == 1);
    CHECK(st.cover == VertexSet{0});
    check_witness(star(4), st);

    CHECK(solve_dp(cycle(4)).cost == 2);
    CHECK(solve_brute(cycle(4)).cost == 2);

    FairVcSolution k5 = solve_dp(complete(5));
    CHECK(k5.cost == 4);
    CHECK(k5.cover.size() == 4);
    CHECK(solve_brute(complete(5)).cost == 4);

    CHECK_THROWS_AS(solve_dp(Graph(0)), invalid_input_error);
}

TEST_CASE("dp equals brute on Petersen") {
    Graph p = petersen();
    FairVcSolution dp = solve_dp(p);
    FairVcSolution br = solve_brute(p);
    CHECK(dp.cost == br.cost);
    check_witness(p, dp);
}

TEST_CASE("dp equals brute on random and structured graphs") {
    Rng rng(555);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + rng.below(10);
        double p = iter % 3 == 0 ? 0.2 : iter % 3 == 1 ? 0.5 : 0.8;
        cross_check(erdos_renyi(n, p, rng));
    }
    cross_check(complete(6));
    cross_check(star(5));
    cross_check(path(7));
    cross_check(complete_multipartite({2, 3, 2}));
    cross_check(complete_multipartite({1, 1, 4}));
}

TEST_CASE("table monotonicity via decision sweep") {
    // solve_bnb(k) must be monotone in k and flip exactly at the dp optimum
    Rng rng(808);
    for (int iter = 0; iter < 15; ++iter) {
        Graph g = erdos_renyi(3 + rng.below(7), 0.5, rng);
        int kstar = solve_dp(g).cost;
        for (int k = 0; k <= g.max_degree(); ++k) {
            auto r = solve_bnb(g, k);
            REQUIRE(r.decision != Decision::unknown);
            CHECK((r.decision == Decision::yes) == (k >= kstar));
            if (r.decision == Decision::yes) {
                CHECK(is_vertex_cover(g, r.cover));
                CHECK(fair_cost(g, r.cover) <= k);
            }
        }
    }
}

TEST_CASE("bnb named examples") {
    CHECK(solve_bnb(star(4), 0).decision == Decision::no);
    CHECK(solve_bnb(star(4), 1).decision == Decision::yes);
    CHECK(solve_bnb(cycle(4), 1).decision == Decision::no);
    CHECK(solve_bnb(cycle(4), 2).decision == Decision::yes);
    CHECK(solve_bnb(Graph(3), 0).decision == Decision::yes); // empty cover works
}

TEST_CASE("and-composition over disjoint unions") {
    Rng rng(1212);
    for (int iter = 0; iter < 20; ++iter) {
        int parts = 2 + rng.below(3);
        std::vector<Graph> gs;
        int worst = 0;
        for (int i = 0; i < parts; ++i) {
            Graph g = erdos_renyi(1 + rng.below(6), 0.5, rng);
            worst = std::max(worst, solve_dp(g).cost);
            gs.push_back(std::move(g));
        }
        Graph u = disjoint_union(gs).graph;
        CHECK(solve_dp(u).cost == worst);
    }
}

TEST_CASE("dp reports width") {
    FairVcSolution s = solve_dp(complete_multipartite({2, 2, 2}));
    CHECK(s.width == 3);
    CHECK(s.cost == solve_brute(complete_multipartite({2, 2, 2})).cost);
}

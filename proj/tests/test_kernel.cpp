#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fair/kernel.hpp"
#include "testutil.hpp"

using namespace fair;
using namespace testutil;

namespace {

LabeledGraph plain(const Graph& g) { return LabeledGraph{g, {}}; }

// sentences used for truth-preservation spot checks
const char* sentence_pool[] = {
    "(exists x (exists y (adj x y)))",
    "(forall x (exists y (adj x y)))",
    "(exists x (forall y (or (= x y) (adj x y))))",
    "(existsS Y (forall x (exists y (and (in y Y) (or (= x y) (adj x y))))))",
    "(forall x (forall y (implies (adj x y) (exists z (and (adj x z) (adj y z))))))",
};

} // namespace

TEST_CASE("threshold formulas") {
    CHECK(twin_class_threshold(0, 1) == 1);
    CHECK(twin_class_threshold(1, 2) == 4);
    CHECK(clique_type_threshold(1, 0, 1) == 2); // 2^0 * 2
    CHECK(clique_type_threshold(2, 1, 1) == 8); // 2^2 * 2
    CHECK(kernel_size_bound(0, 0, 2) == 12);    // 0 + 3*4*2^0
    CHECK(kernel_size_bound(2, 1, 2) == 3 * 4 * (1ll << (2 + 2 + 4)) + 2);
}

TEST_CASE("reduce_twins on K10") {
    KernelStep step = reduce_twins(plain(complete(10)), 1, 2);
    CHECK(step.reduced.graph.vertex_count() == 4); // threshold 2^1*2
    CHECK(step.reduced.graph == complete(4));
    CHECK(step.removed.size() == 6);
    // largest ids went first
    for (const auto& r : step.removed) CHECK(r.id >= 4);
}

TEST_CASE("reduce_twins leaves C4 alone") {
    KernelStep step = reduce_twins(plain(cycle(4)), 0, 1);
    CHECK(step.removed.empty());
    CHECK(step.reduced.graph == cycle(4));
}

TEST_CASE("reduce_twins respects labels and preserves truth") {
    LabeledGraph g;
    g.graph = complete(6);
    g.add_label("mark", VertexSet{0, 1});
    KernelStep step = reduce_twins(g, 0, 1); // threshold 1 per labeled class
    CHECK(step.reduced.graph.vertex_count() == 2);
    REQUIRE(step.reduced.label("mark") != nullptr);
    CHECK(step.reduced.label("mark")->size() == 1);

    Formula f = Formula::parse("(exists x (label mark x))");
    CHECK(evaluate(g, f) == evaluate(step.reduced, f));
    Formula f2 = Formula::parse("(exists x (not (label mark x)))");
    CHECK(evaluate(g, f2) == evaluate(step.reduced, f2));
}

TEST_CASE("reduce_cliques on pendant vertices") {
    // one cover vertex adjacent to 10 pendants: 10 singleton cliques of one type
    Graph g = star(10);
    TwinCover tc = twin_cover_from(g, VertexSet{0});
    REQUIRE(tc.cliques.size() == 10);
    KernelStep step = reduce_cliques(plain(g), tc, 0, 1, twin_class_threshold(0, 1), false);
    // alpha = 2^(1*0) * (1+1) = 2
    CHECK(step.reduced.graph.vertex_count() == 3);
    CHECK(step.removed.size() == 8);
}

TEST_CASE("reduce_cliques keeps distinct types") {
    // 0 covers a pendant K2 {1,2}, a pendant triangle {3,4,5}: distinct types
    Graph g(6, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {0, 5}, {3, 4}, {3, 5}, {4, 5}});
    TwinCover tc = twin_cover_from(g, VertexSet{0});
    REQUIRE(tc.cliques.size() == 2);
    KernelStep step = reduce_cliques(plain(g), tc, 0, 1, 3, false);
    CHECK(step.removed.empty());
}

TEST_CASE("reduce_cliques precondition") {
    TwinCover tc = twin_cover_from(complete(5), VertexSet{});
    CHECK_THROWS_AS(reduce_cliques(plain(complete(5)), tc, 0, 1, 2, false), invalid_state_error);
}

TEST_CASE("pendant triangles: twin rule shrinks, clique rule holds back") {
    // cover vertex 0 with 5 pendant triangles, q_S = q_v = 1
    std::vector<std::pair<int, int>> e;
    for (int t = 0; t < 5; ++t) {
        int base = 1 + 3 * t;
        e.emplace_back(base, base + 1);
        e.emplace_back(base, base + 2);
        e.emplace_back(base + 1, base + 2);
        e.emplace_back(0, base);
        e.emplace_back(0, base + 1);
        e.emplace_back(0, base + 2);
    }
    Graph g(16, e);
    KernelStep twins = reduce_twins(plain(g), 1, 1); // class threshold 2
    // each triangle is one class of 3, shrunk to 2
    CHECK(twins.reduced.graph.vertex_count() == 11);
    TwinCover tc = twin_cover_from(twins.reduced.graph, VertexSet{0});
    KernelStep cliques = reduce_cliques(twins.reduced, tc, 1, 1, 2, false);
    // alpha = 2^(2*1) * 2 = 8 >= 5 cliques of the type: no removals
    CHECK(cliques.removed.empty());

    // sentence truth survives the combined reduction
    Formula f = Formula::parse(sentence_pool[4]);
    CHECK(model_check(g, f).holds == evaluate(plain(g), f));
}

TEST_CASE("exempting empty cover sets keeps isolated cliques") {
    auto parts = std::vector<Graph>(6, complete(2));
    Graph g = disjoint_union(parts).graph;
    TwinCover tc = twin_cover_from(g, VertexSet{});
    KernelStep keep = reduce_cliques(plain(g), tc, 0, 1, 2, true);
    CHECK(keep.removed.empty());
    KernelStep drop = reduce_cliques(plain(g), tc, 0, 1, 2, false);
    CHECK(drop.reduced.graph.vertex_count() == 4); // alpha = 2 cliques survive
}

TEST_CASE("model_check named examples") {
    Formula edge = Formula::parse("(exists x (exists y (adj x y)))");
    ModelCheckResult big = model_check(complete(100), edge);
    CHECK(big.holds);
    CHECK(big.report.reduced.graph.vertex_count() <= 2);
    CHECK(evaluate(plain(complete(3)), edge)); // brute agreement at small scale

    Formula everyone = Formula::parse("(forall x (exists y (adj x y)))");
    auto parts = std::vector<Graph>(50, complete(2));
    Graph many = disjoint_union(parts).graph;
    ModelCheckResult r = model_check(many, everyone);
    CHECK(r.holds);
    CHECK(r.report.reduced.graph.vertex_count() <= r.report.size_bound);
    CHECK(r.report.reduced.graph.vertex_count() < 100);
    Graph three = disjoint_union({complete(2), complete(2), complete(2)}).graph;
    CHECK(evaluate(plain(three), everyone));

    Formula absurd = Formula::parse("(exists x (not (= x x)))");
    CHECK_FALSE(model_check(petersen(), absurd).holds);

    Formula with_free = Formula::parse("free X\n(exists x (in x X))");
    CHECK_THROWS_AS(model_check(complete(3), with_free), invalid_input_error);
}

TEST_CASE("kernel dump format") {
    Formula edge = Formula::parse("(exists x (exists y (adj x y)))");
    ModelCheckResult r = model_check(complete(5), edge);
    std::string d = r.report.dump();
    CHECK(d.find("rule=twin") != std::string::npos);
    CHECK(d.find("kernel n=") != std::string::npos);
    CHECK(d.find("bound=") != std::string::npos);
}

TEST_CASE("truth preservation on random graphs") {
    Rng rng(90210);
    for (int iter = 0; iter < 90; ++iter) {
        int n = 2 + rng.below(9);
        double p = iter % 3 == 0 ? 0.25 : iter % 3 == 1 ? 0.5 : 0.75;
        Graph g = erdos_renyi(n, p, rng);
        Formula f = Formula::parse(sentence_pool[iter % 5]);
        ModelCheckResult r = model_check(g, f);
        CHECK(r.holds == evaluate(plain(g), f));
        CHECK(r.report.reduced.graph.vertex_count() <= r.report.size_bound);
    }
}

TEST_CASE("idempotence: reducing a kernel removes nothing") {
    Rng rng(3131);
    for (int iter = 0; iter < 25; ++iter) {
        Graph g = erdos_renyi(3 + rng.below(8), 0.5, rng);
        Formula f = Formula::parse(sentence_pool[iter % 5]);
        ModelCheckResult r = model_check(g, f);
        ModelCheckResult again = model_check(r.report.reduced.graph, f);
        CHECK(again.report.removed.empty());
    }
}

TEST_CASE("surviving map points at original ids") {
    KernelStep step = reduce_twins(plain(complete(10)), 0, 2);
    REQUIRE(step.surviving.size() == 2);
    CHECK(step.surviving[0] == 0);
    CHECK(step.surviving[1] == 1);
}

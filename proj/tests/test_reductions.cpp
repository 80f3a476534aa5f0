#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "fair/fairvc.hpp"
#include "fair/reductions.hpp"
#include "testutil.hpp"

using namespace fair;
using namespace testutil;

namespace {

using EdgeMap = std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>;

MccInstance two_class(int n, const std::vector<std::pair<int, int>>& pair_edges) {
    EdgeMap em;
    em[{0, 1}] = pair_edges;
    return MccInstance::build(2, {n, n}, em);
}

} // namespace

TEST_CASE("mcc instance building") {
    MccInstance inst = two_class(1, {{0, 0}});
    CHECK(inst.class_size == 1);
    CHECK(inst.edges_per_pair == 1);
    CHECK(inst.has_edge(0, 0, 1, 0));
    CHECK(inst.has_edge(1, 0, 0, 0));

    // classes padded to the largest size
    EdgeMap em;
    em[{0, 1}] = {{2, 0}};
    MccInstance padded = MccInstance::build(2, {1, 1}, em);
    CHECK(padded.class_size == 3);

    // non-uniform edge counts rejected
    EdgeMap bad;
    bad[{0, 1}] = {{0, 0}};
    bad[{0, 2}] = {{0, 0}, {0, 1}};
    bad[{1, 2}] = {{0, 0}};
    CHECK_THROWS_AS(MccInstance::build(3, {2, 2, 2}, bad), invalid_input_error);

    CHECK_THROWS_AS(MccInstance::build(1, {2}, {}), invalid_input_error);
}

TEST_CASE("mcc clique enumeration") {
    MccInstance inst = two_class(2, {{0, 0}, {1, 1}});
    auto cliques = mcc_all_cliques(inst);
    REQUIRE(cliques.size() == 2);
    CHECK(cliques[0] == std::vector<int>{0, 0});
    CHECK(cliques[1] == std::vector<int>{1, 1});

    MccInstance empty = two_class(2, {});
    CHECK(mcc_all_cliques(empty).empty());
}

TEST_CASE("forward translation on the single-edge instance") {
    MccInstance inst = two_class(1, {{0, 0}});
    MccReduction red = gen_fairvc_from_mcc(inst);
    CHECK(red.k == std::max(inst.edges_per_pair - 1, 2 * inst.class_size + 1));

    VertexSet ck = translate_clique_to_cover(inst, {0, 0}, red);
    CHECK(is_vertex_cover(red.h, ck));
    CHECK(fair_cost(red.h, ck) <= red.k);

    CHECK(check_modulator_structure(red));
    CHECK_THROWS_AS(translate_clique_to_cover(two_class(2, {{0, 0}}), {1, 1}, red),
                    invalid_input_error);
}

TEST_CASE("the verbatim budget is one short for the edge gadget") {
    // with k = max(m-1, 2n) the excluded edge-choice vertex already sees
    // 2n enumeration vertices plus its guard
    MccInstance inst = two_class(1, {{0, 0}});
    MccGenOptions opts;
    opts.paper_budget_k = true;
    MccReduction red = gen_fairvc_from_mcc(inst, opts);
    VertexSet ck = translate_clique_to_cover(inst, {0, 0}, red);
    CHECK(is_vertex_cover(red.h, ck));
    CHECK(fair_cost(red.h, ck) == 2 * inst.class_size + 1);
    CHECK(fair_cost(red.h, ck) > red.k);
}

TEST_CASE("zero-edge pairs force a no-instance") {
    MccInstance inst = two_class(2, {});
    MccReduction red = gen_fairvc_from_mcc(inst);
    CHECK(mcc_all_cliques(inst).empty());
    auto r = solve_bnb(red.h, red.k, std::chrono::milliseconds(30000));
    REQUIRE(r.decision != Decision::unknown);
    CHECK(r.decision == Decision::no);
}

TEST_CASE("equivalence sweep: two classes, class size <= 2, up to 2 edges") {
    std::vector<std::pair<int, int>> all_edges = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (int m = 0; m <= 2; ++m) {
        // all edge subsets of the given size
        std::vector<std::vector<std::pair<int, int>>> subsets;
        int total = static_cast<int>(all_edges.size());
        for (int mask = 0; mask < (1 << total); ++mask) {
            if (std::popcount(static_cast<unsigned>(mask)) != m) continue;
            std::vector<std::pair<int, int>> list;
            for (int t = 0; t < total; ++t)
                if ((mask >> t) & 1) list.push_back(all_edges[t]);
            subsets.push_back(std::move(list));
        }
        for (const auto& list : subsets) {
            MccInstance inst = two_class(2, list);
            MccReduction red = gen_fairvc_from_mcc(inst);
            bool clique_exists = !mcc_all_cliques(inst).empty();
            auto r = solve_bnb(red.h, red.k, std::chrono::milliseconds(60000));
            REQUIRE(r.decision != Decision::unknown);
            CHECK((r.decision == Decision::yes) == clique_exists);
            if (r.decision == Decision::yes) {
                CHECK(is_vertex_cover(red.h, r.cover));
                CHECK(fair_cost(red.h, r.cover) <= red.k);
            }
            // forward translation for every clique
            for (const auto& clique : mcc_all_cliques(inst)) {
                VertexSet ck = translate_clique_to_cover(inst, clique, red);
                CHECK(is_vertex_cover(red.h, ck));
                CHECK(fair_cost(red.h, ck) <= red.k);
            }
            CHECK(check_modulator_structure(red));
        }
    }
}

TEST_CASE("modulator size formula") {
    MccInstance inst = two_class(2, {{0, 0}, {1, 1}});
    MccReduction red = gen_fairvc_from_mcc(inst);
    int l = inst.colors, n = inst.class_size, m = inst.edges_per_pair, k = red.k;
    int pairs = l * (l - 1) / 2;
    int expected_middles = l * (k - (n - 1)) + pairs * (k - (m - 1)) + 2 * l * (l - 1) * (k - n);
    CHECK(static_cast<int>(red.map.middles.size()) == expected_middles);
    CHECK(red.map.modulator_size == 2 * l * (l - 1) + expected_middles);
    std::string text = red.map.to_text();
    CHECK(text.find("role modulator_size") != std::string::npos);
    CHECK(text.find("role guard_v0") != std::string::npos);
}

TEST_CASE("incidence budget override") {
    MccInstance inst = two_class(1, {{0, 0}});
    MccGenOptions opts;
    opts.incidence_budget = 2 * inst.class_size; // the proof's slack reading
    MccReduction red = gen_fairvc_from_mcc(inst, opts);
    // forward direction still verifies
    VertexSet ck = translate_clique_to_cover(inst, {0, 0}, red);
    CHECK(is_vertex_cover(red.h, ck));
    CHECK(fair_cost(red.h, ck) <= red.k);
}

TEST_CASE("bin packing generator shapes") {
    BinPackingInstance inst{2, 2, {2, 2}};
    LfairReduction red = gen_lfair_from_binpacking(inst);
    CHECK(red.graph.vertex_count() == 5);
    CHECK(red.universal == 4);
    CHECK(red.graph.degree(red.universal) == 4);
    CHECK(red.ell == 2);
    CHECK(red.k == 2);
    CHECK(red.formula.free_set_vars() == std::vector<std::string>{"X1", "X2"});
    CHECK(red.formula.set_quantifier_count() == 0);
    CHECK(red.formula.vertex_quantifier_count() == 5);

    // the emitted text round-trips through the parser
    Formula back = Formula::parse(red.formula.to_text());
    CHECK(back.free_set_vars() == red.formula.free_set_vars());

    CHECK_THROWS_AS(gen_lfair_from_binpacking(BinPackingInstance{1, 1, {0}}),
                    invalid_input_error);
}

TEST_CASE("bin packing equivalence at tiny scale") {
    // named cases from the construction
    struct Case {
        BinPackingInstance inst;
        bool expect;
    };
    std::vector<Case> cases = {
        {{1, 1, {1}}, true},
        {{1, 3, {2, 2}}, false}, // the universal vertex would see 4
        {{2, 2, {2, 2}}, true},
    };
    for (const auto& [inst, expect] : cases) {
        CHECK(binpacking_feasible(inst) == expect);
        LfairReduction red = gen_lfair_from_binpacking(inst);
        CHECK(lfair_brute_oracle(red.graph, red.formula, red.ell, red.k) == expect);
    }
}

TEST_CASE("bin packing equivalence sweep") {
    // all partitions with a handful of items, both bin counts
    std::vector<std::vector<int>> partitions = {
        {1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}, {3, 2}, {2, 2, 1}, {4, 2}, {3, 3}};
    for (const auto& sizes : partitions) {
        int total = 0;
        for (int s : sizes) total += s;
        for (int ell = 1; ell <= 2; ++ell) {
            for (int cap = 1; cap <= total; ++cap) {
                BinPackingInstance inst{ell, cap, sizes};
                LfairReduction red = gen_lfair_from_binpacking(inst);
                CHECK(binpacking_feasible(inst) ==
                      lfair_brute_oracle(red.graph, red.formula, red.ell, red.k));
            }
        }
    }
}

TEST_CASE("lfair oracle corner cases") {
    // sentence: reduces to plain model checking
    Formula sentence = Formula::parse("(exists x (= x x))");
    CHECK(lfair_brute_oracle(complete(3), sentence, 0, 0));

    // trivially satisfiable formula with a generous budget
    Formula anything = Formula::parse("free X1\n(forall x (= x x))");
    Graph g = complete(4);
    CHECK(lfair_brute_oracle(g, anything, 1, g.max_degree()));

    CHECK_THROWS_AS(lfair_brute_oracle(complete(3), anything, 2, 1), invalid_input_error);
    Formula two = Formula::parse("free X1 X2\n(forall x (= x x))");
    CHECK_THROWS_AS(lfair_brute_oracle(complete(15), two, 2, 1, 20), resource_limit_error);
}

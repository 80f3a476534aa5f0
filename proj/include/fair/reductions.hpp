#pragma once

#include <map>
#include <string>
#include <vector>

#include "fair/formula.hpp"
#include "fair/graph.hpp"

namespace fair {

// Multicolored clique instance: classes of uniform size, uniform inter-class
// edge counts. build() pads classes with isolated vertices; non-uniform edge
// counts are rejected.
struct MccInstance {
    int colors = 0;         // number of classes
    int class_size = 0;     // n, uniform after padding
    int edges_per_pair = 0; // m, uniform
    // (a,b) with a < b -> sorted list of (i,j), i in V_a, j in V_b, 0-based
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;

    static MccInstance build(
        int colors, const std::vector<int>& class_sizes,
        const std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>& edges);

    bool has_edge(int a, int i, int b, int j) const;
};

// all multicolored cliques, as per-class vertex indices
std::vector<std::vector<int>> mcc_all_cliques(const MccInstance& inst);

struct SelectionGadget {
    int guard = -1;
    std::vector<int> choices;
    // per choice: enumeration vertex ids
    std::vector<std::vector<int>> lower, upper;     // vertex gadgets and a-parts
    std::vector<std::vector<int>> lower_b, upper_b; // edge gadgets only
};

struct GadgetMap {
    std::vector<SelectionGadget> vertex_gadgets;              // per class
    std::map<std::pair<int, int>, SelectionGadget> edge_gadgets; // a < b
    std::map<std::pair<int, int>, std::pair<int, int>> incidence; // ordered (a,b) -> (c1,c2)
    std::vector<int> enforced; // guards, incidence vertices, middles
    std::vector<int> middles;  // budget-lowering vertices
    std::vector<int> leaves;
    int modulator_size = 0; // incidence vertices + middles

    std::string to_text() const; // "role <name> <id>..." lines
};

struct MccGenOptions {
    int incidence_budget = -1; // -1 = n (the proof's exactness budget)
    bool paper_budget_k = false; // use max(m-1, 2n) verbatim instead of max(m-1, 2n+1)
};

struct MccReduction {
    Graph h;
    int k = 0;
    GadgetMap map;
};

MccReduction gen_fairvc_from_mcc(const MccInstance& inst, const MccGenOptions& opts = {});

// the forward-direction cover C_K for a multicolored clique, one vertex index
// per class
VertexSet translate_clique_to_cover(const MccInstance& inst, const std::vector<int>& clique,
                                    const MccReduction& red);

// deleting incidence vertices and middles must leave acyclic components,
// each with at most one guard and depth <= 3 from it
bool check_modulator_structure(const MccReduction& red);

struct BinPackingInstance {
    int bins = 0;      // number of bins
    int capacity = 0;  // B
    std::vector<int> sizes;
};

struct LfairReduction {
    Graph graph;   // disjoint cliques plus a universal vertex
    Formula formula; // exists-universal ∧ cover ∧ same, free X1..Xl
    int ell = 0;
    int k = 0; // = capacity
    std::vector<std::vector<int>> clique_ids;
    int universal = -1;
};

LfairReduction gen_lfair_from_binpacking(const BinPackingInstance& inst);

// direct oracle: assign items to bins by enumeration
bool binpacking_feasible(const BinPackingInstance& inst);

// exact decision for the l-fair evaluation problem by enumerating all l-tuples
// of subsets; cap_bits limits l*n
bool lfair_brute_oracle(const Graph& g, const Formula& f, int ell, int k, int cap_bits = 20,
                        long long atom_budget = 4'000'000'000);

} // namespace fair

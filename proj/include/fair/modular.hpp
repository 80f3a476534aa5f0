#pragma once

#include <string>
#include <vector>

#include "fair/graph.hpp"

namespace fair {

// Modular decomposition tree. Each internal node carries the template
// (quotient) graph on its children; expanding bottom-up via substitution
// reproduces the decomposed graph exactly.
struct ModNode {
    enum class Kind { leaf, parallel, series, prime };

    Kind kind = Kind::leaf;
    int vertex = -1;           // leaf: original vertex id
    std::vector<int> children; // node indices
    Graph quotient;            // template on children; edgeless / complete / prime quotient
    std::vector<int> vertices; // original ids below this node, sorted
    int max_degree = 0;        // Δ of the expanded subgraph below this node

    int size() const { return static_cast<int>(vertices.size()); }
};

struct ModTree {
    std::vector<ModNode> nodes;
    int root = -1;

    const ModNode& at(int i) const { return nodes[i]; }
};

// Recursive maximal-strong-module decomposition (polynomial time, not the
// linear-time algorithm). Child order: smallest contained original id.
ModTree decompose(const Graph& g);

// Applies the substitution operation bottom-up; round-trip oracle for
// decompose.
Graph expand(const ModTree& t);

// max child count over internal nodes; 0 for a single leaf
int width(const ModTree& t);

// indented text, one node per line: "node <kind> children=<r> n=<n_t>"
std::string dump(const ModTree& t);

} // namespace fair

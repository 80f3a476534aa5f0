#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "fair/common.hpp"

namespace fair {

// Sorted set of vertex ids. Validity against a particular graph is checked
// at the operations that take both.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<int> ids);
    VertexSet(std::initializer_list<int> ids);

    static VertexSet full(int n);
    static VertexSet from_bitset(const Bitset& b);

    bool contains(int v) const;
    void insert(int v);
    void erase(int v);

    int size() const { return static_cast<int>(ids_.size()); }
    bool empty() const { return ids_.empty(); }
    const std::vector<int>& ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    bool is_subset_of(const VertexSet& o) const;
    VertexSet set_union(const VertexSet& o) const;
    VertexSet set_minus(const VertexSet& o) const;
    VertexSet set_intersect(const VertexSet& o) const;

    Bitset to_bitset(int n) const;

    bool operator==(const VertexSet& o) const = default;
    // lexicographic on the sorted id sequence
    bool operator<(const VertexSet& o) const { return ids_ < o.ids_; }

private:
    std::vector<int> ids_;
};

// Simple undirected graph over ids 0..n-1, immutable after construction.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const;
    const Bitset& neighbor_mask(int v) const;
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;

    // normalized u < v, lexicographically sorted
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<Bitset> masks_;
};

// Graph plus named vertex subsets; label names unique, insertion order kept.
struct LabeledGraph {
    Graph graph;
    std::vector<std::pair<std::string, VertexSet>> labels;

    const VertexSet* label(const std::string& name) const;
    void add_label(const std::string& name, VertexSet s);
};

// max over v of |N(v) ∩ w|; 0 for the empty set
int fair_cost(const Graph& g, const VertexSet& w);

// max over vertices and over the given sets of per-set neighbor counts;
// an empty family costs 0
int l_fair_cost(const Graph& g, const std::vector<VertexSet>& ws);

bool is_vertex_cover(const Graph& g, const VertexSet& w);

struct UnionResult {
    Graph graph;
    std::vector<int> offsets; // offsets[i] added to part i's ids
};
UnionResult disjoint_union(const std::vector<Graph>& parts);

struct SubgraphResult {
    Graph graph;
    std::vector<int> to_original; // new id i came from to_original[i]
};
SubgraphResult induced_subgraph(const Graph& g, const VertexSet& keep);

// Text format: first line "n m", then m lines "u v" with 0 <= u < v < n,
// then optional "label <name> <id>..." lines. '#' starts a comment.
LabeledGraph parse_graph_text(const std::string& text);
std::string graph_to_text(const LabeledGraph& g);
std::string graph_to_text(const Graph& g);
LabeledGraph load_graph_file(const std::string& path);

} // namespace fair

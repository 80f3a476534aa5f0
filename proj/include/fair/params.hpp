#pragma once

#include <optional>
#include <vector>

#include "fair/graph.hpp"

namespace fair {

// {u,v} in E is a twin-edge iff N(u)\{v} = N(v)\{u}.
bool is_twin_edge(const Graph& g, int u, int v);

struct TwinClique {
    std::vector<int> vertices; // sorted
    VertexSet cover_set;       // N(v) ∩ K, identical for all members
};

// K plus the clique decomposition of G\K. Every edge of G is a twin-edge or
// has an endpoint in K.
struct TwinCover {
    VertexSet cover;
    std::vector<TwinClique> cliques;
};

// Decompose G\K for an already-known twin cover K; throws invalid_input_error
// if K leaves a non-twin edge uncovered.
TwinCover twin_cover_from(const Graph& g, const VertexSet& cover);

// Minimum twin cover via exact branching on the non-twin-edge subgraph.
// Returns nullopt if every twin cover is larger than budget; budget < 0 means
// budget = n (always succeeds).
std::optional<TwinCover> min_twin_cover(const Graph& g, int budget = -1);

// Partition of V under "equal closed neighborhood and equal labels".
// Classes ordered by smallest member, members sorted.
std::vector<std::vector<int>> twin_classes(const LabeledGraph& g);

struct NeighborhoodDiversity {
    int count;
    std::vector<std::vector<int>> classes;
};

// Classes of the twin relation N(u)\{v} = N(v)\{u} (true or false twins).
NeighborhoodDiversity neighborhood_diversity(const Graph& g);

} // namespace fair

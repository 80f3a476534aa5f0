#pragma once

#include <optional>
#include <vector>

#include "fair/formula.hpp"
#include "fair/graph.hpp"
#include "fair/params.hpp"

namespace fair {

// Parameters of the shape tables: r = 2^(q_S+2) q_v and
// alpha = 2^(r(q_S+1)) (q_v+1), both saturated.
struct ShapeParams {
    int q_S = 0;
    int q_v = 0;
    int r = 0;
    long long alpha = 0;
};
ShapeParams shape_params(int q_S, int q_v);

// Capped count table for one cover set: cell (i,j) holds
// min(alpha+1, #cliques with min(r+1,|C∩W|)=i and min(r+1,|C\W|)=j).
// Only nonzero cells are stored.
struct AShape {
    VertexSet cover_set;
    std::vector<std::tuple<int, int, long long>> cells; // sorted by (i,j)

    bool operator==(const AShape&) const = default;
    bool operator<(const AShape& o) const {
        return std::tie(cover_set, cells) < std::tie(o.cover_set, o.cells);
    }
};

// Collection of A-shapes over all cover sets realized in the graph, plus the
// fixed intersection with the twin cover.
struct Shape {
    VertexSet cover_intersection; // W ∩ K
    std::vector<AShape> per_cover_set;
    ShapeParams params;

    bool operator==(const Shape& o) const {
        return cover_intersection == o.cover_intersection && per_cover_set == o.per_cover_set;
    }
    bool operator<(const Shape& o) const {
        return std::tie(cover_intersection, per_cover_set) <
               std::tie(o.cover_intersection, o.per_cover_set);
    }
};

Shape shape_of(const Graph& g, const TwinCover& cover, const VertexSet& w, int q_S, int q_v);

// Every shape attained by at least one W with W ∩ K = wK, generated by
// distributing each clique size's multiset over its reachable cells.
std::vector<Shape> enumerate_realizable_shapes(const Graph& g, const TwinCover& cover,
                                               const VertexSet& wK, int q_S, int q_v);

// G |= phi(W) for the sets W of this shape, decided on a canonical
// representative after label-aware kernelization.
bool holds_under_shape(const Graph& g, const TwinCover& cover, const Formula& f, const Shape& s,
                       long long atom_budget = 1'000'000'000);

struct ShapeSolution {
    int cost = 0;
    VertexSet w;
};

// A set W of the given shape minimizing fair_cost(g, W); nullopt when the
// shape admits no valid assignment of the actual cliques.
std::optional<ShapeSolution> min_cost_solution(const Graph& g, const TwinCover& cover,
                                               const Shape& s);

struct FairEvalResult {
    bool satisfiable = false;
    int cost = 0;
    VertexSet w;
};

// Minimum fair cost over all W with G |= phi(W): iterates W ∩ K choices and
// realizable shapes, filters by holds_under_shape, optimizes per shape.
FairEvalResult fair_evaluate(const Graph& g, const Formula& f,
                             long long atom_budget = 1'000'000'000);

} // namespace fair

#pragma once

#include <chrono>
#include <vector>

#include "fair/graph.hpp"
#include "fair/modular.hpp"

namespace fair {

struct FairVcSolution {
    int cost = 0;    // minimum fair cost over all vertex covers
    VertexSet cover; // witness: is_vertex_cover and fair_cost <= cost
    // stats
    int width = 0;
    long long table_entries = 0;
    long long type_checks = 0;
};

// Theorem-style dynamic program over the modular decomposition tree.
// Tab^t[p] = minimum size of a vertex cover of G^t with fair cost <= p.
FairVcSolution solve_dp(const Graph& g);

// Exact optimum by full subset enumeration; ties broken by smaller size,
// then lexicographically smallest set. Throws resource_limit_error above cap.
FairVcSolution solve_brute(const Graph& g, int cap = 22);

enum class Decision { yes, no, unknown };

struct BnbResult {
    Decision decision = Decision::unknown;
    VertexSet cover; // populated on yes
    long long nodes_explored = 0;
};

// Decision "is there a vertex cover of fair cost <= k", exact branch and
// bound with forced-inclusion propagation; unknown only on timeout.
BnbResult solve_bnb(const Graph& g, int k,
                    std::chrono::milliseconds time_budget = std::chrono::milliseconds(60000));

} // namespace fair

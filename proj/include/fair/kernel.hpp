#pragma once

#include <string>
#include <vector>

#include "fair/formula.hpp"
#include "fair/graph.hpp"
#include "fair/params.hpp"

namespace fair {

enum class ReductionRule { twin_rule, clique_rule };

struct Removal {
    int id; // id in the graph the rule ran on
    ReductionRule rule;
};

// One rule application over a labeled graph; reduced is relabeled densely,
// surviving[i] gives the input-graph id of reduced vertex i.
struct KernelStep {
    LabeledGraph reduced;
    std::vector<Removal> removed;
    std::vector<int> surviving;
};

// Composite result across rule applications, ids mapped back to the original
// graph.
struct KernelReport {
    LabeledGraph reduced;
    std::vector<Removal> removed;
    std::vector<int> surviving;
    int cover_size = 0;
    long long size_bound = 0;

    std::string dump() const;
};

// class size threshold 2^{q_S} q_v
long long twin_class_threshold(int q_S, int q_v);
// clique multiplicity threshold alpha = 2^{r q_S} (q_v + 1)
long long clique_type_threshold(long long clique_size_bound, int q_S, int q_v);
// k + (q_v+1) q_v^2 2^(k + 2 q_S + 2^{q_S} q_S q_v)
long long kernel_size_bound(int k, int q_S, int q_v);

// Deletes surplus vertices (largest ids first) from every class with equal
// closed neighborhood and equal labels larger than 2^{q_S} q_v.
KernelStep reduce_twins(const LabeledGraph& g, int q_S, int q_v);

// Deletes surplus cliques (largest-id cliques first) from every labeled type
// with multiplicity above alpha. Requires clique sizes at most
// clique_size_bound; violating cliques raise invalid_state_error. Cliques
// with an empty cover set are skipped when exempt_empty_cover is set.
KernelStep reduce_cliques(const LabeledGraph& g, const TwinCover& cover, int q_S, int q_v,
                          long long clique_size_bound, bool exempt_empty_cover);

// Both rules to a fixpoint starting from the given twin cover.
KernelReport kernelize(const LabeledGraph& g, const VertexSet& cover, int q_S, int q_v,
                       long long clique_size_bound, bool exempt_empty_cover);

struct ModelCheckResult {
    bool holds = false;
    KernelReport report;
};

// Computes a minimum twin cover, kernelizes, asserts the size bound, then
// evaluates the sentence on the kernel.
ModelCheckResult model_check(const Graph& g, const Formula& sentence,
                             long long atom_budget = 1'000'000'000);

} // namespace fair

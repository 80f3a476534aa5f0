#include "fair/fairvc.hpp"

#include <algorithm>
#include <bit>
#include <climits>

namespace fair {

namespace {

constexpr int INF = INT_MAX / 2;

// lexicographic order on the sorted index sequences the masks denote
bool mask_lex_less(uint64_t a, uint64_t b) {
    while (a || b) {
        if (!a) return true; // a is a proper prefix of b
        if (!b) return false;
        int x = std::countr_zero(a), y = std::countr_zero(b);
        if (x != y) return x < y;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

} // namespace

FairVcSolution solve_dp(const Graph& g) {
    int n = g.vertex_count();
    if (n == 0) throw invalid_input_error("solve_dp: empty graph");
    ModTree tree = decompose(g);

    struct NodeData {
        std::vector<int> tab;       // tab[p] = min cover size with fair cost <= p
        std::vector<uint64_t> type; // chosen C_T per p
    };
    std::vector<NodeData> data(tree.nodes.size());
    FairVcSolution out;
    out.width = width(tree);

    // decompose() emits children before parents
    for (size_t id = 0; id < tree.nodes.size(); ++id) {
        const ModNode& node = tree.nodes[id];
        NodeData& d = data[id];
        d.tab.assign(n + 1, INF);
        d.type.assign(n + 1, 0);
        if (node.kind == ModNode::Kind::leaf) {
            for (int p = 0; p <= n; ++p) d.tab[p] = 0;
            out.table_entries += n + 1;
            continue;
        }
        int r = static_cast<int>(node.children.size());
        std::vector<int> child_n(r), child_delta(r);
        for (int i = 0; i < r; ++i) {
            child_n[i] = tree.at(node.children[i]).size();
            child_delta[i] = tree.at(node.children[i]).max_degree;
        }
        std::vector<int> tmass(r, 0); // template neighbor mass per child
        for (int i = 0; i < r; ++i)
            for (int j : node.quotient.neighbors(i)) tmass[i] += child_n[j];

        if (node.kind == ModNode::Kind::parallel) {
            // no template edges: the empty type dominates every other cover of T
            for (int p = 0; p <= n; ++p) {
                long long sum = 0;
                for (int i = 0; i < r; ++i) {
                    int t = data[node.children[i]].tab[p];
                    if (t >= INF) {
                        sum = INF;
                        break;
                    }
                    sum += t;
                }
                d.tab[p] = static_cast<int>(std::min<long long>(sum, INF));
            }
            out.table_entries += n + 1;
            continue;
        }

        // vertex covers of the template
        std::vector<uint64_t> covers;
        if (node.kind == ModNode::Kind::series) {
            if (r > 63)
                throw resource_limit_error("series node with " + std::to_string(r) +
                                           " children exceeds the mask width");
            uint64_t full = (uint64_t(1) << r) - 1;
            for (int i = 0; i < r; ++i) covers.push_back(full & ~(uint64_t(1) << i));
            covers.push_back(full);
        } else {
            if (r > 25)
                throw resource_limit_error("prime quotient with " + std::to_string(r) +
                                           " children exceeds the type enumeration limit");
            uint64_t full = (uint64_t(1) << r) - 1;
            for (uint64_t m = 0; m <= full; ++m) {
                bool is_cover = true;
                for (auto [i, j] : node.quotient.edges())
                    if (!((m >> i) & 1) && !((m >> j) & 1)) {
                        is_cover = false;
                        break;
                    }
                if (is_cover) covers.push_back(m);
            }
        }

        std::vector<int> pj(r), cj(r);
        for (int p = 0; p <= n; ++p) {
            int best = INF;
            uint64_t best_type = 0;
            for (uint64_t m : covers) {
                ++out.type_checks;
                bool ok = true;
                long long size = 0;
                for (int j = 0; j < r && ok; ++j) {
                    if ((m >> j) & 1) {
                        size += child_n[j];
                        continue;
                    }
                    pj[j] = p - tmass[j]; // highest feasible child budget
                    if (pj[j] < 0) {
                        ok = false;
                        break;
                    }
                    cj[j] = data[node.children[j]].tab[pj[j]];
                    if (cj[j] >= INF) {
                        ok = false;
                        break;
                    }
                    size += cj[j];
                }
                if (!ok) continue;
                // fair cost of the fully covered children must fit in p
                for (int i = 0; i < r && ok; ++i) {
                    if (!((m >> i) & 1)) continue;
                    long long cost = child_delta[i];
                    for (int j : node.quotient.neighbors(i))
                        cost += ((m >> j) & 1) ? child_n[j] : cj[j];
                    if (cost > p) ok = false;
                }
                if (!ok) continue;
                if (size < best ||
                    (size == best && mask_lex_less(m, best_type))) {
                    best = static_cast<int>(size);
                    best_type = m;
                }
            }
            d.tab[p] = best;
            d.type[p] = best_type;
        }
        for (int p = 1; p <= n; ++p)
            if (d.tab[p] > d.tab[p - 1])
                throw invalid_state_error("fair cover table is not monotone");
        out.table_entries += n + 1;
    }

    const NodeData& root = data[tree.root];
    int kstar = -1;
    for (int p = 0; p <= n; ++p)
        if (root.tab[p] < INF) {
            kstar = p;
            break;
        }
    if (kstar < 0) throw invalid_state_error("solve_dp: no cover found");

    // reconstruct the witness top-down
    std::vector<int> picked;
    auto rec = [&](auto&& self, int id, int p) -> void {
        const ModNode& node = tree.nodes[id];
        if (node.kind == ModNode::Kind::leaf) return;
        int r = static_cast<int>(node.children.size());
        if (node.kind == ModNode::Kind::parallel) {
            for (int c : node.children) self(self, c, p);
            return;
        }
        uint64_t m = data[id].type[p];
        for (int j = 0; j < r; ++j) {
            int child = node.children[j];
            if ((m >> j) & 1) {
                const auto& vs = tree.at(child).vertices;
                picked.insert(picked.end(), vs.begin(), vs.end());
            } else {
                int mass = 0;
                for (int t : node.quotient.neighbors(j)) mass += tree.at(node.children[t]).size();
                self(self, child, p - mass);
            }
        }
    };
    rec(rec, tree.root, kstar);
    out.cost = kstar;
    out.cover = VertexSet(std::move(picked));
    return out;
}

FairVcSolution solve_brute(const Graph& g, int cap) {
    int n = g.vertex_count();
    if (n > cap || n > 62)
        throw resource_limit_error("solve_brute: " + std::to_string(n) +
                                   " vertices exceeds cap " + std::to_string(std::min(cap, 62)));
    std::vector<uint64_t> adj(n, 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= uint64_t(1) << v;
        adj[v] |= uint64_t(1) << u;
    }
    uint64_t full = n == 0 ? 0 : (uint64_t(1) << n) - 1;
    int best_cost = INT_MAX, best_size = INT_MAX;
    uint64_t best_mask = 0;
    auto lex_less = [](uint64_t a, uint64_t b) { return mask_lex_less(a, b); };
    for (uint64_t w = 0;; ++w) {
        uint64_t outside = full & ~w;
        bool cover = true;
        for (uint64_t rest = outside; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (adj[v] & outside) {
                cover = false;
                break;
            }
        }
        if (cover) {
            int cost = 0;
            for (int v = 0; v < n; ++v)
                cost = std::max(cost, std::popcount(adj[v] & w));
            int size = std::popcount(w);
            if (cost < best_cost || (cost == best_cost && size < best_size) ||
                (cost == best_cost && size == best_size && lex_less(w, best_mask))) {
                best_cost = cost;
                best_size = size;
                best_mask = w;
            }
        }
        if (w == full) break;
    }
    FairVcSolution out;
    out.cost = n == 0 ? 0 : best_cost;
    std::vector<int> ids;
    for (int v = 0; v < n; ++v)
        if ((best_mask >> v) & 1) ids.push_back(v);
    out.cover = VertexSet(std::move(ids));
    return out;
}

namespace {

struct BnbSolver {
    const Graph* g;
    int k;
    std::vector<int8_t> state; // 0 undecided, 1 in, 2 out
    std::vector<int> in_count;
    std::vector<int> und_count;
    std::vector<int> trail;
    long long nodes = 0;
    bool timed_out = false;
    std::chrono::steady_clock::time_point deadline;

    bool assign(int v, int8_t s) { // returns false on contradiction
        state[v] = s;
        trail.push_back(v);
        bool ok = true;
        for (int w : g->neighbors(v)) {
            --und_count[w];
            if (s == 1 && ++in_count[w] > k) ok = false;
        }
        return ok;
    }

    void undo(size_t mark) {
        while (trail.size() > mark) {
            int v = trail.back();
            trail.pop_back();
            int8_t s = state[v];
            state[v] = 0;
            for (int w : g->neighbors(v)) {
                ++und_count[w];
                if (s == 1) --in_count[w];
            }
        }
    }

    // propagate forced moves to a fixpoint; false on contradiction
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < g->vertex_count(); ++v) {
                if (state[v] == 2) {
                    // excluded vertex: every undecided neighbor must go in
                    for (int w : g->neighbors(v)) {
                        if (state[w] != 0) continue;
                        if (!assign(w, 1)) return false;
                        changed = true;
                    }
                }
                if (state[v] == 0 && in_count[v] + und_count[v] > k) {
                    // excluding v would push its own count past k
                    if (!assign(v, 1)) return false;
                    changed = true;
                }
                if (in_count[v] > k) return false;
            }
        }
        return true;
    }

    bool search() {
        if ((++nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return false;
        }
        // pick an uncovered edge endpoint with the most undecided neighbors
        int pick = -1, pick_score = -1;
        for (auto [u, v] : g->edges()) {
            if (state[u] == 1 || state[v] == 1) continue;
            for (int c : {u, v})
                if (state[c] == 0 && und_count[c] > pick_score) {
                    pick_score = und_count[c];
                    pick = c;
                }
        }
        if (pick == -1) {
            // no undecided endpoint left on an uncovered edge; reject the
            // residual both-excluded case
            for (auto [u, v] : g->edges())
                if (state[u] == 2 && state[v] == 2) return false;
            return true;
        }
        size_t mark = trail.size();
        if (assign(pick, 1) && propagate() && search()) return true;
        if (timed_out) return false;
        undo(mark);
        if (assign(pick, 2) && propagate() && search()) return true;
        undo(mark);
        return false;
    }
};

} // namespace

BnbResult solve_bnb(const Graph& g, int k, std::chrono::milliseconds time_budget) {
    BnbResult out;
    if (k < 0) {
        out.decision = Decision::no;
        return out;
    }
    BnbSolver s;
    s.g = &g;
    s.k = k;
    s.state.assign(g.vertex_count(), 0);
    s.in_count.assign(g.vertex_count(), 0);
    s.und_count.assign(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) s.und_count[v] = g.degree(v);
    s.deadline = std::chrono::steady_clock::now() + time_budget;

    bool found = s.propagate() && s.search();
    out.nodes_explored = s.nodes;
    if (s.timed_out) {
        out.decision = Decision::unknown;
        return out;
    }
    if (!found) {
        out.decision = Decision::no;
        return out;
    }
    std::vector<int> ids;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (s.state[v] == 1) ids.push_back(v);
    out.decision = Decision::yes;
    out.cover = VertexSet(std::move(ids));
    return out;
}

} // namespace fair

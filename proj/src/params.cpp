#include "fair/params.hpp"

#include <algorithm>
#include <map>

namespace fair {

bool is_twin_edge(const Graph& g, int u, int v) {
    if (!g.has_edge(u, v))
        throw invalid_input_error("is_twin_edge: {" + std::to_string(u) + "," +
                                  std::to_string(v) + "} is not an edge");
    Bitset nu = g.neighbor_mask(u);
    Bitset nv = g.neighbor_mask(v);
    nu.reset(v);
    nv.reset(u);
    return nu == nv;
}

TwinCover twin_cover_from(const Graph& g, const VertexSet& cover) {
    int n = g.vertex_count();
    Bitset in_cover = cover.to_bitset(n);
    for (auto [u, v] : g.edges())
        if (!in_cover.test(u) && !in_cover.test(v) && !is_twin_edge(g, u, v))
            throw invalid_input_error("not a twin cover: non-twin edge {" + std::to_string(u) +
                                      "," + std::to_string(v) + "} uncovered");
    TwinCover tc;
    tc.cover = cover;
    // components of G \ K, in order of smallest vertex
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (in_cover.test(s) || seen[s]) continue;
        std::vector<int> comp{s};
        seen[s] = 1;
        for (size_t head = 0; head < comp.size(); ++head)
            for (int w : g.neighbors(comp[head]))
                if (!in_cover.test(w) && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        TwinClique c;
        c.vertices = std::move(comp);
        std::vector<int> a;
        for (int w : g.neighbors(c.vertices[0]))
            if (in_cover.test(w)) a.push_back(w);
        c.cover_set = VertexSet(std::move(a));
        tc.cliques.push_back(std::move(c));
    }
    return tc;
}

namespace {

// Exact minimum vertex cover of the subgraph spanned by `edges`, classic
// include-u / discard-u (forcing N(u)) branching with a greedy upper bound.
struct VcSearch {
    const Graph* g;
    std::vector<std::pair<int, int>> edges;
    std::vector<char> chosen;
    std::vector<char> best;
    int best_size;

    int matching_lower_bound(const std::vector<char>& in) const {
        std::vector<char> used(g->vertex_count(), 0);
        int lb = 0;
        for (auto [u, v] : edges) {
            if (in[u] || in[v] || used[u] || used[v]) continue;
            used[u] = used[v] = 1;
            ++lb;
        }
        return lb;
    }

    void search(int chosen_count) {
        if (chosen_count + matching_lower_bound(chosen) >= best_size) return;
        // pick an uncovered edge whose endpoint has max uncovered degree
        int pick_u = -1;
        int best_deg = -1;
        std::vector<int> udeg(g->vertex_count(), 0);
        bool any = false;
        for (auto [u, v] : edges)
            if (!chosen[u] && !chosen[v]) {
                ++udeg[u];
                ++udeg[v];
                any = true;
            }
        if (!any) {
            best = chosen;
            best_size = chosen_count;
            return;
        }
        for (auto [u, v] : edges) {
            if (chosen[u] || chosen[v]) continue;
            int d = std::max(udeg[u], udeg[v]);
            if (d > best_deg) {
                best_deg = d;
                pick_u = udeg[u] >= udeg[v] ? u : v;
            }
        }
        // branch 1: pick_u in the cover
        chosen[pick_u] = 1;
        search(chosen_count + 1);
        chosen[pick_u] = 0;
        // branch 2: pick_u excluded, all its uncovered neighbors forced in
        std::vector<int> forced;
        for (auto [u, v] : edges) {
            int other = u == pick_u ? v : (v == pick_u ? u : -1);
            if (other >= 0 && !chosen[other]) {
                chosen[other] = 1;
                forced.push_back(other);
            }
        }
        if (!forced.empty()) search(chosen_count + static_cast<int>(forced.size()));
        for (int w : forced) chosen[w] = 0;
    }
};

} // namespace

std::optional<TwinCover> min_twin_cover(const Graph& g, int budget) {
    int n = g.vertex_count();
    if (budget < 0) budget = n;
    std::vector<std::pair<int, int>> hard;
    for (auto [u, v] : g.edges())
        if (!is_twin_edge(g, u, v)) hard.emplace_back(u, v);

    VcSearch s;
    s.g = &g;
    s.edges = std::move(hard);
    s.chosen.assign(n, 0);
    // degree-1 cascade: a pendant's neighbor belongs to some minimum cover
    int forced_count = 0;
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> udeg(n, 0);
        std::vector<int> other(n, -1);
        for (auto [u, v] : s.edges) {
            if (s.chosen[u] || s.chosen[v]) continue;
            ++udeg[u];
            ++udeg[v];
            other[u] = v;
            other[v] = u;
        }
        for (int v = 0; v < n; ++v) {
            if (udeg[v] == 1 && !s.chosen[v] && !s.chosen[other[v]]) {
                s.chosen[other[v]] = 1;
                ++forced_count;
                changed = true;
            }
        }
    }
    // greedy upper bound on top of the forced choices: take max-degree endpoints
    {
        std::vector<char> in = s.chosen;
        int size = forced_count;
        for (;;) {
            std::vector<int> deg(n, 0);
            bool any = false;
            for (auto [u, v] : s.edges)
                if (!in[u] && !in[v]) {
                    ++deg[u];
                    ++deg[v];
                    any = true;
                }
            if (!any) break;
            int pick = static_cast<int>(std::max_element(deg.begin(), deg.end()) - deg.begin());
            in[pick] = 1;
            ++size;
        }
        s.best = in;
        s.best_size = size;
    }
    // a small budget caps the branching depth outright
    s.best_size = std::min(s.best_size, budget + 1);
    s.search(forced_count);

    if (s.best_size > budget) return std::nullopt;
    std::vector<int> ids;
    for (int v = 0; v < n; ++v)
        if (s.best[v]) ids.push_back(v);
    return twin_cover_from(g, VertexSet(std::move(ids)));
}

std::vector<std::vector<int>> twin_classes(const LabeledGraph& g) {
    int n = g.graph.vertex_count();
    std::vector<Bitset> label_masks;
    for (const auto& [name, s] : g.labels) label_masks.push_back(s.to_bitset(n));

    // fingerprint = (closed neighborhood, label membership vector)
    std::map<std::pair<std::vector<int>, std::vector<char>>, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) {
        std::vector<int> closed = g.graph.neighbors(v);
        closed.push_back(v);
        std::sort(closed.begin(), closed.end());
        std::vector<char> lv;
        for (const auto& m : label_masks) lv.push_back(m.test(v));
        groups[{std::move(closed), std::move(lv)}].push_back(v);
    }
    std::vector<std::vector<int>> classes;
    for (auto& [key, members] : groups) classes.push_back(members);
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
}

NeighborhoodDiversity neighborhood_diversity(const Graph& g) {
    int n = g.vertex_count();
    auto twins = [&](int u, int v) {
        Bitset nu = g.neighbor_mask(u);
        Bitset nv = g.neighbor_mask(v);
        nu.reset(v);
        nv.reset(u);
        return nu == nv;
    };
    std::vector<int> cls(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (cls[v] >= 0) continue;
        cls[v] = next;
        for (int u = v + 1; u < n; ++u)
            if (cls[u] < 0 && twins(v, u)) cls[u] = next;
        ++next;
    }
    std::vector<std::vector<int>> classes(next);
    for (int v = 0; v < n; ++v) classes[cls[v]].push_back(v);
    return {next, std::move(classes)};
}

} // namespace fair

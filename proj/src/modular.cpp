#include "fair/modular.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fair {

namespace {

std::vector<std::vector<int>> components_of(const Graph& g, const std::vector<int>& verts,
                                            bool complement) {
    int n = g.vertex_count();
    std::vector<char> in_set(n, 0);
    for (int v : verts) in_set[v] = 1;
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> comps;
    for (int s : verts) {
        if (seen[s]) continue;
        std::vector<int> comp{s};
        seen[s] = 1;
        for (size_t head = 0; head < comp.size(); ++head) {
            int u = comp[head];
            for (int w : verts) {
                if (seen[w]) continue;
                bool adj = g.has_edge(u, w);
                if (complement ? !adj : adj) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

// Smallest module of G[verts] containing seed; grows by absorbing splitters.
// Each (outside vertex, member) pair is inspected once.
std::vector<char> module_closure(const Graph& g, const std::vector<int>& verts,
                                 std::vector<char> in_module) {
    std::vector<char> sees(g.vertex_count(), 0), misses(g.vertex_count(), 0);
    std::vector<int> queue;
    for (int v : verts)
        if (in_module[v]) queue.push_back(v);
    for (size_t head = 0; head < queue.size(); ++head) {
        int m = queue[head];
        for (int x : verts) {
            if (in_module[x]) continue;
            (g.has_edge(x, m) ? sees[x] : misses[x]) = 1;
            if (sees[x] && misses[x]) {
                in_module[x] = 1;
                queue.push_back(x);
            }
        }
    }
    return in_module;
}

// Maximal proper strong modules of a connected, co-connected G[verts]: two
// vertices share a block iff the module closure of the pair stays proper.
std::vector<std::vector<int>> prime_blocks(const Graph& g, const std::vector<int>& verts) {
    int total = static_cast<int>(verts.size());
    std::vector<int> block(g.vertex_count(), -1);
    std::vector<std::vector<int>> blocks;
    for (int v : verts) {
        if (block[v] >= 0) continue;
        int id = static_cast<int>(blocks.size());
        blocks.push_back({v});
        block[v] = id;
        for (int u : verts) {
            if (block[u] >= 0 || u == v) continue;
            std::vector<char> seed(g.vertex_count(), 0);
            seed[v] = seed[u] = 1;
            std::vector<char> closed = module_closure(g, verts, std::move(seed));
            int sz = 0;
            for (int w : verts) sz += closed[w];
            if (sz < total) {
                block[u] = id;
                blocks[id].push_back(u);
            }
        }
        std::sort(blocks[id].begin(), blocks[id].end());
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return blocks;
}

struct Builder {
    const Graph* g;
    ModTree tree;

    int build(std::vector<int> verts) {
        if (verts.size() == 1) {
            ModNode leaf;
            leaf.kind = ModNode::Kind::leaf;
            leaf.vertex = verts[0];
            leaf.vertices = std::move(verts);
            tree.nodes.push_back(std::move(leaf));
            return static_cast<int>(tree.nodes.size() - 1);
        }
        auto comps = components_of(*g, verts, false);
        ModNode::Kind kind;
        std::vector<std::vector<int>> parts;
        if (comps.size() > 1) {
            kind = ModNode::Kind::parallel;
            parts = std::move(comps);
        } else {
            auto cocomps = components_of(*g, verts, true);
            if (cocomps.size() > 1) {
                kind = ModNode::Kind::series;
                parts = std::move(cocomps);
            } else {
                kind = ModNode::Kind::prime;
                parts = prime_blocks(*g, verts);
            }
        }
        int r = static_cast<int>(parts.size());
        ModNode node;
        node.kind = kind;
        std::vector<std::pair<int, int>> template_edges;
        if (kind == ModNode::Kind::series) {
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j) template_edges.emplace_back(i, j);
        } else if (kind == ModNode::Kind::prime) {
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    if (g->has_edge(parts[i][0], parts[j][0])) template_edges.emplace_back(i, j);
        }
        node.quotient = Graph(r, template_edges);
        node.vertices = verts;
        std::sort(node.vertices.begin(), node.vertices.end());
        for (auto& p : parts) node.children.push_back(build(std::move(p)));
        // Δ of the expanded graph: per child, inner Δ plus template neighbor mass
        int delta = 0;
        for (int i = 0; i < r; ++i) {
            const ModNode& child = tree.nodes[node.children[i]];
            int mass = 0;
            for (int j : node.quotient.neighbors(i))
                mass += tree.nodes[node.children[j]].size();
            delta = std::max(delta, child.max_degree + mass);
        }
        node.max_degree = delta;
        tree.nodes.push_back(std::move(node));
        return static_cast<int>(tree.nodes.size() - 1);
    }
};

void expand_rec(const ModTree& t, int id, std::vector<std::pair<int, int>>& edges) {
    const ModNode& n = t.at(id);
    if (n.kind == ModNode::Kind::leaf) return;
    for (int c : n.children) expand_rec(t, c, edges);
    for (auto [i, j] : n.quotient.edges())
        for (int u : t.at(n.children[i]).vertices)
            for (int v : t.at(n.children[j]).vertices) edges.emplace_back(u, v);
}

void dump_rec(const ModTree& t, int id, int depth, std::ostringstream& os) {
    const ModNode& n = t.at(id);
    for (int i = 0; i < depth; ++i) os << "  ";
    const char* kind = n.kind == ModNode::Kind::leaf      ? "leaf"
                       : n.kind == ModNode::Kind::parallel ? "parallel"
                       : n.kind == ModNode::Kind::series   ? "series"
                                                            : "prime";
    os << "node " << kind << " children=" << n.children.size() << " n=" << n.size() << '\n';
    for (int c : n.children) dump_rec(t, c, depth + 1, os);
}

} // namespace

ModTree decompose(const Graph& g) {
    if (g.vertex_count() == 0) throw invalid_input_error("decompose: empty graph");
    Builder b;
    b.g = &g;
    std::vector<int> all(g.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    b.tree.root = b.build(std::move(all));
    return std::move(b.tree);
}

Graph expand(const ModTree& t) {
    int n = 0;
    for (const auto& node : t.nodes)
        if (node.kind == ModNode::Kind::leaf) ++n;
    std::vector<std::pair<int, int>> edges;
    expand_rec(t, t.root, edges);
    return Graph(n, edges);
}

int width(const ModTree& t) {
    int w = 0;
    for (const auto& n : t.nodes) w = std::max(w, static_cast<int>(n.children.size()));
    return w;
}

std::string dump(const ModTree& t) {
    std::ostringstream os;
    dump_rec(t, t.root, 0, os);
    return os.str();
}

} // namespace fair

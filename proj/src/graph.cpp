#include "fair/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace fair {

int Bitset::count() const {
    int c = 0;
    for (uint64_t x : w_) c += std::popcount(x);
    return c;
}

int Bitset::and_count(const Bitset& o) const {
    int c = 0;
    size_t k = std::min(w_.size(), o.w_.size());
    for (size_t i = 0; i < k; ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
}

bool Bitset::intersects(const Bitset& o) const {
    size_t k = std::min(w_.size(), o.w_.size());
    for (size_t i = 0; i < k; ++i)
        if (w_[i] & o.w_[i]) return true;
    return false;
}

bool Bitset::is_subset_of(const Bitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i) {
        uint64_t other = i < o.w_.size() ? o.w_[i] : 0;
        if (w_[i] & ~other) return false;
    }
    return true;
}

Bitset& Bitset::operator|=(const Bitset& o) {
    for (size_t i = 0; i < w_.size() && i < o.w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

Bitset& Bitset::operator&=(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= i < o.w_.size() ? o.w_[i] : 0;
    return *this;
}

bool Bitset::next_subset() {
    if (nbits_ == 0) return false;
    size_t i = 0;
    for (; i < w_.size(); ++i) {
        if (++w_[i] != 0) break;
    }
    int top_bits = nbits_ & 63;
    if (top_bits != 0) {
        uint64_t valid = (uint64_t(1) << top_bits) - 1;
        if (w_.back() & ~valid) {
            clear();
            return false;
        }
    } else if (i == w_.size()) {
        // carry ran off the end: wrapped to all zeros
        return false;
    }
    return true;
}

std::vector<int> Bitset::to_vector() const {
    std::vector<int> out;
    for (int i = 0; i < nbits_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

VertexSet::VertexSet(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

VertexSet::VertexSet(std::initializer_list<int> ids) : VertexSet(std::vector<int>(ids)) {}

VertexSet VertexSet::full(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    VertexSet s;
    s.ids_ = std::move(v);
    return s;
}

VertexSet VertexSet::from_bitset(const Bitset& b) {
    VertexSet s;
    s.ids_ = b.to_vector();
    return s;
}

bool VertexSet::contains(int v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

void VertexSet::insert(int v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) ids_.insert(it, v);
}

void VertexSet::erase(int v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it != ids_.end() && *it == v) ids_.erase(it);
}

bool VertexSet::is_subset_of(const VertexSet& o) const {
    return std::includes(o.ids_.begin(), o.ids_.end(), ids_.begin(), ids_.end());
}

VertexSet VertexSet::set_union(const VertexSet& o) const {
    VertexSet r;
    std::set_union(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                   std::back_inserter(r.ids_));
    return r;
}

VertexSet VertexSet::set_minus(const VertexSet& o) const {
    VertexSet r;
    std::set_difference(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                        std::back_inserter(r.ids_));
    return r;
}

VertexSet VertexSet::set_intersect(const VertexSet& o) const {
    VertexSet r;
    std::set_intersection(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                          std::back_inserter(r.ids_));
    return r;
}

Bitset VertexSet::to_bitset(int n) const {
    Bitset b(n);
    for (int v : ids_) {
        if (v < 0 || v >= n) throw invalid_input_error("vertex id out of range: " + std::to_string(v));
        b.set(v);
    }
    return b;
}

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 0) throw invalid_input_error("negative vertex count");
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u == v) throw invalid_input_error("self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw invalid_input_error("edge endpoint out of range");
        if (u > v) std::swap(u, v);
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    adj_.assign(n_, {});
    masks_.assign(n_, Bitset(n_));
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        masks_[u].set(v);
        masks_[v].set(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    return masks_[u].test(v);
}

const std::vector<int>& Graph::neighbors(int v) const { return adj_[v]; }

const Bitset& Graph::neighbor_mask(int v) const { return masks_[v]; }

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

const VertexSet* LabeledGraph::label(const std::string& name) const {
    for (const auto& [k, s] : labels)
        if (k == name) return &s;
    return nullptr;
}

void LabeledGraph::add_label(const std::string& name, VertexSet s) {
    if (label(name) != nullptr) throw invalid_input_error("duplicate label: " + name);
    for (int v : s)
        if (v < 0 || v >= graph.vertex_count())
            throw invalid_input_error("label '" + name + "' references invalid id");
    labels.emplace_back(name, std::move(s));
}

int fair_cost(const Graph& g, const VertexSet& w) {
    Bitset mask = w.to_bitset(g.vertex_count());
    int best = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        best = std::max(best, g.neighbor_mask(v).and_count(mask));
    return best;
}

int l_fair_cost(const Graph& g, const std::vector<VertexSet>& ws) {
    int best = 0;
    for (const auto& w : ws) best = std::max(best, fair_cost(g, w));
    return best;
}

bool is_vertex_cover(const Graph& g, const VertexSet& w) {
    Bitset mask = w.to_bitset(g.vertex_count());
    for (auto [u, v] : g.edges())
        if (!mask.test(u) && !mask.test(v)) return false;
    return true;
}

UnionResult disjoint_union(const std::vector<Graph>& parts) {
    if (parts.empty()) throw invalid_input_error("disjoint_union of empty list");
    std::vector<int> offsets(parts.size());
    int n = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        offsets[i] = n;
        n += parts[i].vertex_count();
    }
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < parts.size(); ++i)
        for (auto [u, v] : parts[i].edges())
            edges.emplace_back(u + offsets[i], v + offsets[i]);
    return {Graph(n, edges), std::move(offsets)};
}

SubgraphResult induced_subgraph(const Graph& g, const VertexSet& keep) {
    std::vector<int> to_original(keep.begin(), keep.end());
    std::vector<int> new_id(g.vertex_count(), -1);
    for (size_t i = 0; i < to_original.size(); ++i) {
        int v = to_original[i];
        if (v < 0 || v >= g.vertex_count())
            throw invalid_input_error("induced_subgraph: id out of range");
        new_id[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (new_id[u] >= 0 && new_id[v] >= 0) edges.emplace_back(new_id[u], new_id[v]);
    return {Graph(static_cast<int>(to_original.size()), edges), std::move(to_original)};
}

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

} // namespace

LabeledGraph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    long long m = -1;
    long long edges_seen = 0;
    std::vector<std::pair<int, int>> edges;
    LabeledGraph out;
    std::vector<std::pair<std::string, VertexSet>> labels;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = strip_comment(line);
        if (blank(body)) continue;
        std::istringstream ls(body);
        if (n < 0) {
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw invalid_input_error("graph header expected 'n m' at line " + std::to_string(lineno));
            continue;
        }
        std::string first;
        ls >> first;
        if (first == "label") {
            std::string name;
            if (!(ls >> name))
                throw invalid_input_error("label line missing name at line " + std::to_string(lineno));
            std::vector<int> ids;
            int id;
            while (ls >> id) ids.push_back(id);
            labels.emplace_back(name, VertexSet(std::move(ids)));
            continue;
        }
        int u, v;
        try {
            u = std::stoi(first);
        } catch (...) {
            throw invalid_input_error("bad token '" + first + "' at line " + std::to_string(lineno));
        }
        if (!(ls >> v))
            throw invalid_input_error("edge line expected 'u v' at line " + std::to_string(lineno));
        if (!(0 <= u && u < v && v < n))
            throw invalid_input_error("edge must satisfy 0 <= u < v < n at line " + std::to_string(lineno));
        edges.emplace_back(u, v);
        ++edges_seen;
    }
    if (n < 0) throw invalid_input_error("empty graph file");
    if (edges_seen != m)
        throw invalid_input_error("declared " + std::to_string(m) + " edges, found " +
                                  std::to_string(edges_seen));
    out.graph = Graph(n, edges);
    for (auto& [name, s] : labels) out.add_label(name, std::move(s));
    return out;
}

std::string graph_to_text(const LabeledGraph& g) {
    std::ostringstream os;
    os << g.graph.vertex_count() << ' ' << g.graph.edge_count() << '\n';
    for (auto [u, v] : g.graph.edges()) os << u << ' ' << v << '\n';
    for (const auto& [name, s] : g.labels) {
        os << "label " << name;
        for (int v : s) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

std::string graph_to_text(const Graph& g) {
    return graph_to_text(LabeledGraph{g, {}});
}

LabeledGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph_text(buf.str());
}

} // namespace fair

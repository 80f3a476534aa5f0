#include "fair/reductions.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>

namespace fair {

MccInstance MccInstance::build(
    int colors, const std::vector<int>& class_sizes,
    const std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>& edges) {
    if (colors < 2) throw invalid_input_error("multicolored clique needs at least 2 classes");
    MccInstance inst;
    inst.colors = colors;
    int n = 1;
    for (int s : class_sizes) n = std::max(n, s);
    for (const auto& [key, list] : edges) {
        auto [a, b] = key;
        if (!(0 <= a && a < b && b < colors))
            throw invalid_input_error("edge pair must satisfy 0 <= a < b < colors");
        for (auto [i, j] : list) n = std::max({n, i + 1, j + 1});
    }
    inst.class_size = n; // classes padded with isolated vertices

    int m = -1;
    for (int a = 0; a < colors; ++a)
        for (int b = a + 1; b < colors; ++b) {
            std::vector<std::pair<int, int>> list;
            auto it = edges.find({a, b});
            if (it != edges.end()) list = it->second;
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            for (auto [i, j] : list)
                if (i < 0 || j < 0 || i >= n || j >= n)
                    throw invalid_input_error("edge endpoint index out of range");
            if (m < 0) m = static_cast<int>(list.size());
            if (m != static_cast<int>(list.size()))
                throw invalid_input_error(
                    "non-uniform edge counts between class pairs; pad the instance first");
            inst.edges[{a, b}] = std::move(list);
        }
    inst.edges_per_pair = m;
    return inst;
}

bool MccInstance::has_edge(int a, int i, int b, int j) const {
    if (a > b) {
        std::swap(a, b);
        std::swap(i, j);
    }
    const auto& list = edges.at({a, b});
    return std::binary_search(list.begin(), list.end(), std::make_pair(i, j));
}

std::vector<std::vector<int>> mcc_all_cliques(const MccInstance& inst) {
    std::vector<std::vector<int>> found;
    std::vector<int> pick(inst.colors, 0);
    std::function<void(int)> rec = [&](int a) {
        if (a == inst.colors) {
            found.push_back(pick);
            return;
        }
        for (int i = 0; i < inst.class_size; ++i) {
            bool ok = true;
            for (int b = 0; b < a && ok; ++b)
                if (!inst.has_edge(b, pick[b], a, i)) ok = false;
            if (!ok) continue;
            pick[a] = i;
            rec(a + 1);
        }
    };
    rec(0);
    return found;
}

namespace {

struct HBuilder {
    std::vector<std::pair<int, int>> edges;
    int next = 0;

    int fresh() { return next++; }
    void connect(int u, int v) { edges.emplace_back(u, v); }
};

} // namespace

MccReduction gen_fairvc_from_mcc(const MccInstance& inst, const MccGenOptions& opts) {
    int l = inst.colors, n = inst.class_size, m = inst.edges_per_pair;
    // the edge-selection gadget's excluded choice vertex sees its 2n
    // enumeration vertices plus its guard, so the budget needs 2n+1
    int k = opts.paper_budget_k ? std::max(m - 1, 2 * n) : std::max(m - 1, 2 * n + 1);
    int incidence_budget = opts.incidence_budget < 0 ? n : opts.incidence_budget;
    if (incidence_budget > k)
        throw invalid_input_error("incidence budget cannot exceed the global budget");

    HBuilder hb;
    GadgetMap map;

    for (int a = 0; a < l; ++a) {
        SelectionGadget gad;
        gad.guard = hb.fresh();
        for (int i = 0; i < n; ++i) {
            int ch = hb.fresh();
            gad.choices.push_back(ch);
            hb.connect(gad.guard, ch);
            int number = i + 1; // class vertices are numbered 1..n
            std::vector<int> lo, up;
            for (int t = 0; t < number; ++t) {
                int e = hb.fresh();
                hb.connect(ch, e);
                lo.push_back(e);
            }
            for (int t = 0; t < n - number; ++t) {
                int e = hb.fresh();
                hb.connect(ch, e);
                up.push_back(e);
            }
            gad.lower.push_back(std::move(lo));
            gad.upper.push_back(std::move(up));
        }
        map.vertex_gadgets.push_back(std::move(gad));
    }

    for (const auto& [key, list] : inst.edges) {
        SelectionGadget gad;
        gad.guard = hb.fresh();
        for (int q = 0; q < m; ++q) {
            int ch = hb.fresh();
            gad.choices.push_back(ch);
            hb.connect(gad.guard, ch);
            auto [i, j] = list[q];
            int vi = i + 1, vj = j + 1;
            auto grow = [&](int count) {
                std::vector<int> part;
                for (int t = 0; t < count; ++t) {
                    int e = hb.fresh();
                    hb.connect(ch, e);
                    part.push_back(e);
                }
                return part;
            };
            gad.lower.push_back(grow(vi));        // lower a-part
            gad.upper.push_back(grow(n - vi));    // upper a-part
            gad.lower_b.push_back(grow(vj));      // lower b-part
            gad.upper_b.push_back(grow(n - vj));  // upper b-part
        }
        map.edge_gadgets[key] = std::move(gad);
    }

    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) {
            if (a == b) continue;
            int c1 = hb.fresh(), c2 = hb.fresh();
            map.incidence[{a, b}] = {c1, c2};
            const SelectionGadget& vg = map.vertex_gadgets[a];
            for (int i = 0; i < n; ++i) {
                for (int e : vg.lower[i]) hb.connect(c1, e);
                for (int e : vg.upper[i]) hb.connect(c2, e);
            }
            const SelectionGadget& eg = map.edge_gadgets.at({std::min(a, b), std::max(a, b)});
            for (int q = 0; q < m; ++q) {
                const auto& a_lower = a < b ? eg.lower[q] : eg.lower_b[q];
                const auto& a_upper = a < b ? eg.upper[q] : eg.upper_b[q];
                for (int e : a_upper) hb.connect(c1, e);
                for (int e : a_lower) hb.connect(c2, e);
            }
        }

    // budget lowering: each forced middle spends one unit of the host's budget
    std::vector<std::pair<int, int>> lowered; // (host, allowed real neighbors)
    for (int a = 0; a < l; ++a) lowered.emplace_back(map.vertex_gadgets[a].guard, n - 1);
    for (const auto& [key, gad] : map.edge_gadgets) lowered.emplace_back(gad.guard, m - 1);
    for (const auto& [key, cc] : map.incidence) {
        lowered.emplace_back(cc.first, incidence_budget);
        lowered.emplace_back(cc.second, incidence_budget);
    }
    std::vector<int> base_enforced;
    for (const auto& gad : map.vertex_gadgets) base_enforced.push_back(gad.guard);
    for (const auto& [key, gad] : map.edge_gadgets) base_enforced.push_back(gad.guard);
    for (const auto& [key, cc] : map.incidence) {
        base_enforced.push_back(cc.first);
        base_enforced.push_back(cc.second);
    }
    for (auto [host, budget] : lowered) {
        int cnt = k - budget;
        for (int t = 0; t < cnt; ++t) {
            int mid = hb.fresh();
            hb.connect(host, mid);
            map.middles.push_back(mid);
        }
    }
    map.enforced = base_enforced;
    map.enforced.insert(map.enforced.end(), map.middles.begin(), map.middles.end());
    std::sort(map.enforced.begin(), map.enforced.end());

    // k+1 pendant leaves force every enforced vertex into any fair cover
    for (int host : map.enforced) {
        for (int t = 0; t <= k; ++t) {
            int leaf = hb.fresh();
            hb.connect(host, leaf);
            map.leaves.push_back(leaf);
        }
    }
    map.modulator_size = static_cast<int>(map.incidence.size() * 2 + map.middles.size());

    MccReduction red;
    red.h = Graph(hb.next, hb.edges);
    red.k = k;
    red.map = std::move(map);
    return red;
}

VertexSet translate_clique_to_cover(const MccInstance& inst, const std::vector<int>& clique,
                                    const MccReduction& red) {
    if (static_cast<int>(clique.size()) != inst.colors)
        throw invalid_input_error("clique must pick one vertex per class");
    for (int i : clique)
        if (i < 0 || i >= inst.class_size) throw invalid_input_error("clique index out of range");
    // locate the connecting edge of every pair
    std::map<std::pair<int, int>, int> edge_index;
    for (int a = 0; a < inst.colors; ++a)
        for (int b = a + 1; b < inst.colors; ++b) {
            const auto& list = inst.edges.at({a, b});
            auto it = std::lower_bound(list.begin(), list.end(),
                                       std::make_pair(clique[a], clique[b]));
            if (it == list.end() || *it != std::make_pair(clique[a], clique[b]))
                throw invalid_input_error("the given vertices are not a multicolored clique");
            edge_index[{a, b}] = static_cast<int>(it - list.begin());
        }

    std::vector<int> out = red.map.enforced;
    for (int a = 0; a < inst.colors; ++a) {
        const SelectionGadget& vg = red.map.vertex_gadgets[a];
        for (int i = 0; i < inst.class_size; ++i)
            if (i != clique[a]) out.push_back(vg.choices[i]);
        for (int e : vg.lower[clique[a]]) out.push_back(e);
        for (int e : vg.upper[clique[a]]) out.push_back(e);
    }
    for (const auto& [key, q] : edge_index) {
        const SelectionGadget& eg = red.map.edge_gadgets.at(key);
        for (int qq = 0; qq < inst.edges_per_pair; ++qq)
            if (qq != q) out.push_back(eg.choices[qq]);
        for (int e : eg.lower[q]) out.push_back(e);
        for (int e : eg.upper[q]) out.push_back(e);
        for (int e : eg.lower_b[q]) out.push_back(e);
        for (int e : eg.upper_b[q]) out.push_back(e);
    }
    return VertexSet(std::move(out));
}

bool check_modulator_structure(const MccReduction& red) {
    const Graph& h = red.h;
    std::vector<char> removed(h.vertex_count(), 0);
    for (const auto& [key, cc] : red.map.incidence) {
        removed[cc.first] = 1;
        removed[cc.second] = 1;
    }
    for (int v : red.map.middles) removed[v] = 1;
    std::set<int> guards;
    for (const auto& gad : red.map.vertex_gadgets) guards.insert(gad.guard);
    for (const auto& [key, gad] : red.map.edge_gadgets) guards.insert(gad.guard);

    std::vector<char> seen(h.vertex_count(), 0);
    for (int s = 0; s < h.vertex_count(); ++s) {
        if (removed[s] || seen[s]) continue;
        std::vector<int> comp{s};
        seen[s] = 1;
        for (size_t head = 0; head < comp.size(); ++head)
            for (int w : h.neighbors(comp[head]))
                if (!removed[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        long long inner_edges = 0;
        int guard_count = 0, root = comp[0];
        for (int v : comp) {
            if (guards.count(v)) {
                ++guard_count;
                root = v;
            }
            for (int w : h.neighbors(v))
                if (!removed[w]) ++inner_edges;
        }
        inner_edges /= 2;
        if (inner_edges != static_cast<long long>(comp.size()) - 1) return false; // not a tree
        if (guard_count > 1) return false;
        // BFS depth from the guard (or any root when the component has none)
        std::map<int, int> depth;
        depth[root] = 0;
        std::vector<int> queue{root};
        for (size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int w : h.neighbors(v)) {
                if (removed[w] || depth.count(w)) continue;
                depth[w] = depth[v] + 1;
                if (depth[w] > 3) return false;
                queue.push_back(w);
            }
        }
    }
    return true;
}

std::string GadgetMap::to_text() const {
    std::ostringstream os;
    auto list = [&](const std::string& name, const std::vector<int>& ids) {
        os << "role " << name;
        for (int v : ids) os << ' ' << v;
        os << '\n';
    };
    for (size_t a = 0; a < vertex_gadgets.size(); ++a) {
        const auto& gad = vertex_gadgets[a];
        list("guard_v" + std::to_string(a), {gad.guard});
        list("choice_v" + std::to_string(a), gad.choices);
        for (size_t i = 0; i < gad.choices.size(); ++i) {
            list("enum_v" + std::to_string(a) + "_" + std::to_string(i) + "_lower", gad.lower[i]);
            list("enum_v" + std::to_string(a) + "_" + std::to_string(i) + "_upper", gad.upper[i]);
        }
    }
    for (const auto& [key, gad] : edge_gadgets) {
        std::string tag = std::to_string(key.first) + "_" + std::to_string(key.second);
        list("guard_e" + tag, {gad.guard});
        list("choice_e" + tag, gad.choices);
        for (size_t q = 0; q < gad.choices.size(); ++q) {
            std::string base = "enum_e" + tag + "_" + std::to_string(q);
            list(base + "_a_lower", gad.lower[q]);
            list(base + "_a_upper", gad.upper[q]);
            list(base + "_b_lower", gad.lower_b[q]);
            list(base + "_b_upper", gad.upper_b[q]);
        }
    }
    for (const auto& [key, cc] : incidence) {
        std::string tag = std::to_string(key.first) + "_" + std::to_string(key.second);
        list("c1_" + tag, {cc.first});
        list("c2_" + tag, {cc.second});
    }
    list("middles", middles);
    list("leaves", leaves);
    list("enforced", enforced);
    os << "role modulator_size " << modulator_size << '\n';
    os << "# modulator = 2*l*(l-1) incidence vertices + " << middles.size() << " middles\n";
    return os.str();
}

namespace {

FormulaNode mk(FormulaKind kind, std::vector<FormulaNode> children) {
    FormulaNode n;
    n.kind = kind;
    n.children = std::move(children);
    return n;
}

FormulaNode atom2(FormulaKind kind, const std::string& a, const std::string& b) {
    FormulaNode n;
    n.kind = kind;
    n.name = a;
    n.name2 = b;
    return n;
}

FormulaNode quant(FormulaKind kind, const std::string& var, FormulaNode body) {
    FormulaNode n;
    n.kind = kind;
    n.name = var;
    n.children.push_back(std::move(body));
    return n;
}

FormulaNode conj(std::vector<FormulaNode> parts) {
    if (parts.size() == 1) return std::move(parts[0]);
    return mk(FormulaKind::logical_and, std::move(parts));
}

FormulaNode disj(std::vector<FormulaNode> parts) {
    if (parts.size() == 1) return std::move(parts[0]);
    return mk(FormulaKind::logical_or, std::move(parts));
}

FormulaNode not_equal(const std::string& a, const std::string& b) {
    return mk(FormulaKind::logical_not, {atom2(FormulaKind::equals, a, b)});
}

} // namespace

LfairReduction gen_lfair_from_binpacking(const BinPackingInstance& inst) {
    if (inst.bins < 1) throw invalid_input_error("need at least one bin");
    if (inst.capacity < 1) throw invalid_input_error("capacity must be positive");
    if (inst.sizes.empty()) throw invalid_input_error("need at least one item");
    for (int s : inst.sizes)
        if (s < 1) throw invalid_input_error("item sizes must be at least 1");

    std::vector<std::vector<int>> clique_ids;
    std::vector<std::pair<int, int>> edges;
    int next = 0;
    for (int s : inst.sizes) {
        std::vector<int> clique;
        for (int t = 0; t < s; ++t) clique.push_back(next++);
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j)
                edges.emplace_back(clique[i], clique[j]);
        clique_ids.push_back(std::move(clique));
    }
    int universal = next++;
    for (int v = 0; v < universal; ++v) edges.emplace_back(v, universal);

    std::vector<std::string> freevars;
    for (int j = 1; j <= inst.bins; ++j) freevars.push_back("X" + std::to_string(j));

    // univ(u): every other vertex is adjacent to u
    FormulaNode univ = quant(FormulaKind::forall_vertex, "w",
                             mk(FormulaKind::implies,
                                {not_equal("w", "u"), atom2(FormulaKind::adjacent, "w", "u")}));
    // cover: every non-universal vertex lies in some bin set
    std::vector<FormulaNode> in_some;
    for (const auto& x : freevars) in_some.push_back(atom2(FormulaKind::member, "v", x));
    FormulaNode cover = quant(FormulaKind::forall_vertex, "v",
                              mk(FormulaKind::implies, {not_equal("v", "u"), disj(std::move(in_some))}));
    // same: adjacent non-universal vertices agree on every bin set
    std::vector<FormulaNode> agree;
    for (const auto& x : freevars)
        agree.push_back(mk(FormulaKind::iff, {atom2(FormulaKind::member, "x", x),
                                              atom2(FormulaKind::member, "y", x)}));
    FormulaNode same = quant(
        FormulaKind::forall_vertex, "x",
        quant(FormulaKind::forall_vertex, "y",
              mk(FormulaKind::implies,
                 {conj({not_equal("x", "u"), not_equal("y", "u"),
                        atom2(FormulaKind::adjacent, "x", "y")}),
                  conj(std::move(agree))})));

    FormulaNode body = conj({std::move(univ), std::move(cover), std::move(same)});
    FormulaNode root = quant(FormulaKind::exists_vertex, "u", std::move(body));
    return LfairReduction{Graph(next, edges), Formula(std::move(root), std::move(freevars)),
                          inst.bins, inst.capacity, std::move(clique_ids), universal};
}

bool binpacking_feasible(const BinPackingInstance& inst) {
    for (int s : inst.sizes)
        if (s > inst.capacity) return false;
    std::vector<int> sizes = inst.sizes;
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    std::vector<int> load(inst.bins, 0);
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == sizes.size()) return true;
        std::set<int> tried;
        for (int b = 0; b < inst.bins; ++b) {
            if (load[b] + sizes[i] > inst.capacity) continue;
            if (!tried.insert(load[b]).second) continue; // symmetric bin
            load[b] += sizes[i];
            if (rec(i + 1)) return true;
            load[b] -= sizes[i];
        }
        return false;
    };
    return rec(0);
}

bool lfair_brute_oracle(const Graph& g, const Formula& f, int ell, int k, int cap_bits,
                        long long atom_budget) {
    if (static_cast<int>(f.free_set_vars().size()) != ell)
        throw invalid_input_error("formula free variable count does not match ell");
    LabeledGraph lg{g, {}};
    if (ell == 0) return evaluate(lg, f, atom_budget);
    int n = g.vertex_count();
    long long bits = static_cast<long long>(ell) * n;
    if (bits > cap_bits || bits > 62)
        throw resource_limit_error("l-fair enumeration needs " + std::to_string(bits) +
                                   " bits, cap is " + std::to_string(cap_bits));
    std::vector<uint64_t> adj(n, 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= uint64_t(1) << v;
        adj[v] |= uint64_t(1) << u;
    }
    uint64_t per_set = n == 0 ? 0 : (uint64_t(1) << n) - 1;
    Evaluator ev(lg, f);
    std::vector<Bitset> masks(ell, Bitset(n));
    // descending order reaches large satisfying tuples quickly on
    // yes-instances with generous budgets
    uint64_t total = bits == 0 ? 1 : uint64_t(1) << bits;
    for (uint64_t state = total; state-- > 0;) {
        bool fair = true;
        for (int j = 0; j < ell && fair; ++j) {
            uint64_t w = (state >> (j * n)) & per_set;
            for (int v = 0; v < n; ++v)
                if (std::popcount(adj[v] & w) > k) {
                    fair = false;
                    break;
                }
        }
        if (!fair) continue;
        for (int j = 0; j < ell; ++j) {
            uint64_t w = (state >> (j * n)) & per_set;
            for (int v = 0; v < n; ++v) masks[j].assign(v, (w >> v) & 1);
        }
        if (ev.run(masks, atom_budget)) return true;
    }
    return false;
}

} // namespace fair

#include "fair/kernel.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <sstream>

namespace fair {

namespace {

constexpr long long SATURATE = LLONG_MAX / 4;

long long pow2_saturated(long long e) {
    if (e >= 62) return SATURATE;
    return 1ll << e;
}

long long mul_saturated(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    if (a > SATURATE / b) return SATURATE;
    return a * b;
}

KernelStep delete_vertices(const LabeledGraph& g, const std::vector<int>& doomed,
                           ReductionRule rule) {
    KernelStep step;
    VertexSet keep = VertexSet::full(g.graph.vertex_count()).set_minus(VertexSet(doomed));
    SubgraphResult sub = induced_subgraph(g.graph, keep);
    step.reduced.graph = sub.graph;
    std::vector<int> new_id(g.graph.vertex_count(), -1);
    for (size_t i = 0; i < sub.to_original.size(); ++i) new_id[sub.to_original[i]] = (int)i;
    for (const auto& [name, s] : g.labels) {
        std::vector<int> ids;
        for (int v : s)
            if (new_id[v] >= 0) ids.push_back(new_id[v]);
        step.reduced.add_label(name, VertexSet(std::move(ids)));
    }
    for (int v : doomed) step.removed.push_back({v, rule});
    std::sort(step.removed.begin(), step.removed.end(),
              [](const Removal& a, const Removal& b) { return a.id < b.id; });
    step.surviving = std::move(sub.to_original);
    return step;
}

} // namespace

long long twin_class_threshold(int q_S, int q_v) {
    return mul_saturated(pow2_saturated(q_S), q_v);
}

long long clique_type_threshold(long long clique_size_bound, int q_S, int q_v) {
    long long e = mul_saturated(clique_size_bound, q_S);
    return mul_saturated(pow2_saturated(std::min<long long>(e, 62)), q_v + 1);
}

long long kernel_size_bound(int k, int q_S, int q_v) {
    long long inner = mul_saturated(mul_saturated(pow2_saturated(q_S), q_S), q_v);
    long long e = k + 2ll * q_S + inner;
    long long pow = pow2_saturated(std::min<long long>(e, 62));
    long long big = mul_saturated(mul_saturated((long long)q_v + 1, (long long)q_v * q_v), pow);
    return std::min<long long>(SATURATE, k + big);
}

KernelStep reduce_twins(const LabeledGraph& g, int q_S, int q_v) {
    if (q_S < 0 || q_v < 0) throw invalid_input_error("negative quantifier count");
    long long threshold = twin_class_threshold(q_S, q_v);
    std::vector<int> doomed;
    for (const auto& cls : twin_classes(g)) {
        if ((long long)cls.size() <= threshold) continue;
        // largest ids go first
        for (size_t i = cls.size(); (long long)i > threshold; --i)
            doomed.push_back(cls[i - 1]);
    }
    return delete_vertices(g, doomed, ReductionRule::twin_rule);
}

KernelStep reduce_cliques(const LabeledGraph& g, const TwinCover& cover, int q_S, int q_v,
                          long long clique_size_bound, bool exempt_empty_cover) {
    long long alpha = clique_type_threshold(clique_size_bound, q_S, q_v);
    std::vector<Bitset> label_masks;
    for (const auto& [name, s] : g.labels)
        label_masks.push_back(s.to_bitset(g.graph.vertex_count()));

    // labeled type = (size, cover set, multiset of vertex label vectors)
    using TypeKey = std::tuple<size_t, VertexSet, std::vector<std::vector<char>>>;
    std::map<TypeKey, std::vector<const TwinClique*>> types;
    for (const auto& c : cover.cliques) {
        if (exempt_empty_cover && c.cover_set.empty()) continue;
        if ((long long)c.vertices.size() > clique_size_bound)
            throw invalid_state_error("reduce_cliques: clique of size " +
                                      std::to_string(c.vertices.size()) + " exceeds the bound " +
                                      std::to_string(clique_size_bound));
        std::vector<std::vector<char>> labelling;
        for (int v : c.vertices) {
            std::vector<char> lv;
            for (const auto& m : label_masks) lv.push_back(m.test(v));
            labelling.push_back(std::move(lv));
        }
        std::sort(labelling.begin(), labelling.end());
        types[{c.vertices.size(), c.cover_set, std::move(labelling)}].push_back(&c);
    }

    std::vector<int> doomed;
    for (auto& [key, group] : types) {
        if ((long long)group.size() <= alpha) continue;
        std::sort(group.begin(), group.end(), [](const TwinClique* a, const TwinClique* b) {
            return a->vertices.front() < b->vertices.front();
        });
        for (size_t i = group.size(); (long long)i > alpha; --i)
            for (int v : group[i - 1]->vertices) doomed.push_back(v);
    }
    return delete_vertices(g, doomed, ReductionRule::clique_rule);
}

KernelReport kernelize(const LabeledGraph& g, const VertexSet& cover, int q_S, int q_v,
                       long long clique_size_bound, bool exempt_empty_cover) {
    KernelReport rep;
    rep.reduced = g;
    rep.surviving.resize(g.graph.vertex_count());
    std::iota(rep.surviving.begin(), rep.surviving.end(), 0);
    VertexSet cur_cover = cover;

    auto absorb = [&](const KernelStep& step, ReductionRule rule) {
        for (const auto& r : step.removed) rep.removed.push_back({rep.surviving[r.id], rule});
        std::vector<int> new_id(rep.reduced.graph.vertex_count(), -1);
        for (size_t i = 0; i < step.surviving.size(); ++i) new_id[step.surviving[i]] = (int)i;
        std::vector<int> orig;
        for (int v : step.surviving) orig.push_back(rep.surviving[v]);
        rep.surviving = std::move(orig);
        std::vector<int> ck;
        for (int v : cur_cover)
            if (new_id[v] >= 0) ck.push_back(new_id[v]);
        cur_cover = VertexSet(std::move(ck));
        rep.reduced = step.reduced;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        KernelStep twins = reduce_twins(rep.reduced, q_S, q_v);
        if (!twins.removed.empty()) {
            absorb(twins, ReductionRule::twin_rule);
            changed = true;
        }
        TwinCover tc = twin_cover_from(rep.reduced.graph, cur_cover);
        KernelStep cliques =
            reduce_cliques(rep.reduced, tc, q_S, q_v, clique_size_bound, exempt_empty_cover);
        if (!cliques.removed.empty()) {
            absorb(cliques, ReductionRule::clique_rule);
            changed = true;
        }
    }
    std::sort(rep.removed.begin(), rep.removed.end(),
              [](const Removal& a, const Removal& b) { return a.id < b.id; });
    return rep;
}

std::string KernelReport::dump() const {
    std::ostringstream os;
    for (const auto& r : removed)
        os << "removed " << r.id << " rule="
           << (r.rule == ReductionRule::twin_rule ? "twin" : "clique") << '\n';
    os << "kernel n=" << reduced.graph.vertex_count() << " bound=" << size_bound << '\n';
    return os.str();
}

ModelCheckResult model_check(const Graph& g, const Formula& sentence, long long atom_budget) {
    if (!sentence.free_set_vars().empty())
        throw invalid_input_error("model_check requires a sentence without free variables");
    int q_S = sentence.set_quantifier_count();
    int q_v = sentence.vertex_quantifier_count();
    auto tc = min_twin_cover(g);
    // sentences carry no labels, so each twin clique is a single class and the
    // twin rule caps clique sizes at the class threshold
    long long r = twin_class_threshold(q_S, q_v);
    KernelReport rep = kernelize(LabeledGraph{g, {}}, tc->cover, q_S, q_v, r, false);
    rep.cover_size = tc->cover.size();
    rep.size_bound = kernel_size_bound(tc->cover.size(), q_S, q_v);
    if (rep.reduced.graph.vertex_count() > rep.size_bound)
        throw invalid_state_error("kernel exceeds the size bound");
    ModelCheckResult out;
    out.holds = evaluate(rep.reduced, sentence, atom_budget);
    out.report = std::move(rep);
    return out;
}

} // namespace fair

#include "fair/shapes.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>

#include "fair/kernel.hpp"

namespace fair {

namespace {

constexpr long long SATURATE = LLONG_MAX / 4;

long long pow2_saturated(long long e) { return e >= 62 ? SATURATE : 1ll << e; }

// cell a clique of size c lands in when s of its vertices are selected
std::pair<int, int> cell_for_split(int c, int s, int r) {
    return {std::min<long long>(r + 1, s), std::min<long long>(r + 1, c - s)};
}

// number of selected vertices for a clique of size c at cell (i,j), choosing
// the minimum when the cell leaves slack; -1 when the cell is unreachable
int sel_count(int c, int i, int j, int r) {
    if (j <= r) {
        int s = c - j;
        if (s < 0 || cell_for_split(c, s, r) != std::make_pair(i, j)) return -1;
        return s;
    }
    if (i <= r) return c - i >= r + 1 ? i : -1;
    return c >= 2 * (r + 1) ? r + 1 : -1;
}

// max |N(u) ∩ W| over the clique's own vertices, minus the |A ∩ wK| term
int internal_cost(int c, int i, int j, int r) {
    int s = sel_count(c, i, j, r);
    return j == 0 ? s - 1 : s;
}

std::vector<std::pair<int, int>> cells_for_size(int c, int r) {
    std::set<std::pair<int, int>> cells;
    for (int s = 0; s <= c; ++s) cells.insert(cell_for_split(c, s, r));
    return {cells.begin(), cells.end()};
}

struct CliqueGroup {
    VertexSet cover_set;
    std::vector<const TwinClique*> cliques;     // by first vertex id
    std::vector<std::pair<int, int>> size_mult; // (size, multiplicity), sizes ascending
};

std::vector<CliqueGroup> group_cliques(const TwinCover& cover) {
    std::map<VertexSet, CliqueGroup> by_cover_set;
    for (const auto& c : cover.cliques) {
        CliqueGroup& grp = by_cover_set[c.cover_set];
        grp.cover_set = c.cover_set;
        grp.cliques.push_back(&c);
    }
    std::vector<CliqueGroup> out;
    for (auto& [key, grp] : by_cover_set) {
        std::sort(grp.cliques.begin(), grp.cliques.end(),
                  [](const TwinClique* a, const TwinClique* b) {
                      return a->vertices.front() < b->vertices.front();
                  });
        std::map<int, int> mult;
        for (const TwinClique* c : grp.cliques) ++mult[(int)c->vertices.size()];
        grp.size_mult.assign(mult.begin(), mult.end());
        out.push_back(std::move(grp));
    }
    return out;
}

using Cell = std::pair<int, int>;
using CellCount = std::map<Cell, long long>;

// One size class's placement: cell -> clique count.
struct SizePlacement {
    int size;
    std::vector<std::pair<Cell, int>> cells;
};
using Distribution = std::vector<SizePlacement>;

// Enumerates every distribution of the group's cliques over cells compatible
// with `target` (exact counts, >= alpha+1 on capped cells). Stops early when
// cb returns true.
bool for_each_compatible_distribution(const CliqueGroup& grp, const AShape& target, int r,
                                      long long alpha,
                                      const std::function<bool(const Distribution&)>& cb) {
    std::vector<Cell> cells;
    std::vector<long long> needed; // exact demand, or -(alpha+1) marker for capped
    for (auto [i, j, cnt] : target.cells) {
        cells.push_back({i, j});
        needed.push_back(cnt <= alpha ? cnt : -(alpha + 1));
    }
    int total_cliques = 0;
    for (auto [size, mult] : grp.size_mult) total_cliques += mult;

    std::vector<long long> placed(cells.size(), 0);
    Distribution dist(grp.size_mult.size());
    for (size_t i = 0; i < grp.size_mult.size(); ++i) dist[i].size = grp.size_mult[i].first;

    // candidate cell indices per size class
    std::vector<std::vector<int>> cand(grp.size_mult.size());
    for (size_t si = 0; si < grp.size_mult.size(); ++si) {
        int c = grp.size_mult[si].first;
        for (size_t ci = 0; ci < cells.size(); ++ci)
            if (sel_count(c, cells[ci].first, cells[ci].second, r) >= 0)
                cand[si].push_back((int)ci);
    }

    // feasibility: every remaining exact demand / capped deficit must still be
    // fillable by the remaining cliques
    auto deficits = [&]() {
        long long need = 0;
        for (size_t ci = 0; ci < cells.size(); ++ci) {
            if (needed[ci] >= 0)
                need += needed[ci] - placed[ci];
            else
                need += std::max<long long>(0, -needed[ci] - placed[ci]);
        }
        return need;
    };

    std::function<bool(size_t, int, size_t, int)> rec =
        [&](size_t si, int left_in_size, size_t cand_pos, int remaining_total) -> bool {
        if (si == grp.size_mult.size()) {
            for (size_t ci = 0; ci < cells.size(); ++ci) {
                if (needed[ci] >= 0 && placed[ci] != needed[ci]) return false;
                if (needed[ci] < 0 && placed[ci] < -needed[ci]) return false;
            }
            return cb(dist);
        }
        if (left_in_size == 0) {
            return rec(si + 1, si + 1 < grp.size_mult.size() ? grp.size_mult[si + 1].second : 0,
                       0, remaining_total);
        }
        if (deficits() > remaining_total) return false;
        if (cand_pos >= cand[si].size()) return false;
        int ci = cand[si][cand_pos];
        long long room = needed[ci] >= 0 ? needed[ci] - placed[ci] : left_in_size;
        int max_here = (int)std::min<long long>(left_in_size, room);
        // count for this (size, cell), highest first so fully-determined
        // placements are found quickly
        for (int take = max_here; take >= 0; --take) {
            placed[ci] += take;
            if (take > 0) dist[si].cells.push_back({cells[ci], take});
            bool done;
            if (take == left_in_size)
                done = rec(si + 1,
                           si + 1 < grp.size_mult.size() ? grp.size_mult[si + 1].second : 0, 0,
                           remaining_total - take);
            else
                done = rec(si, left_in_size - take, cand_pos + 1, remaining_total - take);
            if (take > 0) dist[si].cells.pop_back();
            placed[ci] -= take;
            if (done) return true;
        }
        return false;
    };
    int first_mult = grp.size_mult.empty() ? 0 : grp.size_mult[0].second;
    return rec(0, first_mult, 0, total_cliques);
}

// Deterministic realization: sizes ascending, cliques by id, cells in sorted
// order, lowest vertex ids selected inside each clique.
void realize_distribution(const CliqueGroup& grp, const Distribution& dist, int r,
                          std::vector<int>& selected) {
    for (const auto& sp : dist) {
        std::vector<const TwinClique*> of_size;
        for (const TwinClique* c : grp.cliques)
            if ((int)c->vertices.size() == sp.size) of_size.push_back(c);
        auto cells = sp.cells;
        std::sort(cells.begin(), cells.end());
        size_t next = 0;
        for (auto& [cell, cnt] : cells) {
            int s = sel_count(sp.size, cell.first, cell.second, r);
            for (int t = 0; t < cnt; ++t) {
                const TwinClique* c = of_size[next++];
                for (int idx = 0; idx < s; ++idx) selected.push_back(c->vertices[idx]);
            }
        }
    }
}

const AShape* find_ashape(const Shape& s, const VertexSet& cover_set) {
    for (const auto& a : s.per_cover_set)
        if (a.cover_set == cover_set) return &a;
    return nullptr;
}

// representative W of the shape: wK plus a first compatible assignment
VertexSet realize_representative(const TwinCover& cover, const Shape& s) {
    auto groups = group_cliques(cover);
    if (groups.size() != s.per_cover_set.size())
        throw invalid_input_error("shape does not match the graph's cover sets");
    std::vector<int> selected(s.cover_intersection.begin(), s.cover_intersection.end());
    for (const auto& grp : groups) {
        const AShape* target = find_ashape(s, grp.cover_set);
        if (target == nullptr)
            throw invalid_input_error("shape is missing a realized cover set");
        bool found = for_each_compatible_distribution(
            grp, *target, s.params.r, s.params.alpha, [&](const Distribution& dist) {
                realize_distribution(grp, dist, s.params.r, selected);
                return true;
            });
        if (!found) throw invalid_input_error("shape is not realizable on this graph");
    }
    return VertexSet(std::move(selected));
}

// truth of phi(w): label the graph with w, kernelize label-aware, evaluate
bool evaluate_with_solution(const Graph& g, const VertexSet& cover, const Formula& f,
                            const VertexSet& w, int q_S, int q_v, long long atom_budget) {
    LabeledGraph lg{g, {}};
    lg.add_label("__sol", w);
    // one label splits each clique into at most two classes
    long long clique_bound = 2 * twin_class_threshold(q_S, q_v);
    KernelReport rep = kernelize(lg, cover, q_S, q_v, clique_bound, false);
    Interpretation itp;
    itp.bind(f.free_set_vars()[0], *rep.reduced.label("__sol"));
    return evaluate(rep.reduced, f, itp, atom_budget);
}

} // namespace

ShapeParams shape_params(int q_S, int q_v) {
    if (q_S < 0 || q_v < 0) throw invalid_input_error("negative quantifier count");
    ShapeParams p;
    p.q_S = q_S;
    p.q_v = q_v;
    long long r = pow2_saturated(q_S + 2) * std::max(1, q_v);
    if (q_v == 0) r = 0;
    p.r = (int)std::min<long long>(r, 1'000'000'000);
    long long e = (long long)p.r * (q_S + 1);
    p.alpha = std::min<long long>(SATURATE, pow2_saturated(std::min<long long>(e, 62)) * (q_v + 1));
    return p;
}

Shape shape_of(const Graph& g, const TwinCover& cover, const VertexSet& w, int q_S, int q_v) {
    ShapeParams params = shape_params(q_S, q_v);
    Bitset wb = w.to_bitset(g.vertex_count());
    Shape s;
    s.params = params;
    s.cover_intersection = w.set_intersect(cover.cover);
    std::map<VertexSet, CellCount> tables;
    for (const auto& c : cover.cliques) {
        int selected = 0;
        for (int v : c.vertices) selected += wb.test(v);
        Cell cell = cell_for_split((int)c.vertices.size(), selected, params.r);
        tables[c.cover_set][cell] += 1;
    }
    for (auto& [cover_set, table] : tables) {
        AShape a;
        a.cover_set = cover_set;
        for (auto& [cell, cnt] : table)
            a.cells.emplace_back(cell.first, cell.second, std::min(cnt, params.alpha + 1));
        s.per_cover_set.push_back(std::move(a));
    }
    return s;
}

std::vector<Shape> enumerate_realizable_shapes(const Graph& g, const TwinCover& cover,
                                               const VertexSet& wK, int q_S, int q_v) {
    (void)g; // the cover's clique list fully determines the enumeration
    if (!wK.is_subset_of(cover.cover))
        throw invalid_input_error("wK must be a subset of the twin cover");
    ShapeParams params = shape_params(q_S, q_v);
    auto groups = group_cliques(cover);

    // per group: all capped count tables reachable by some per-clique split
    std::vector<std::vector<CellCount>> per_group;
    long long budget = 2'000'000;
    for (const auto& grp : groups) {
        std::set<CellCount> seen;
        CellCount current;
        std::function<void(size_t)> rec = [&](size_t si) {
            if (si == grp.size_mult.size()) {
                CellCount capped = current;
                for (auto& [cell, cnt] : capped) cnt = std::min(cnt, params.alpha + 1);
                seen.insert(std::move(capped));
                if ((long long)seen.size() > budget)
                    throw resource_limit_error("shape enumeration exceeds the budget");
                return;
            }
            auto [size, mult] = grp.size_mult[si];
            auto cells = cells_for_size(size, params.r);
            // compositions of mult over the cells
            std::function<void(size_t, int)> comp = [&](size_t ci, int left) {
                if (ci + 1 == cells.size()) {
                    if (left > 0) current[cells[ci]] += left;
                    rec(si + 1);
                    if (left > 0) {
                        auto it = current.find(cells[ci]);
                        if ((it->second -= left) == 0) current.erase(it);
                    }
                    return;
                }
                for (int take = 0; take <= left; ++take) {
                    if (take > 0) current[cells[ci]] += take;
                    comp(ci + 1, left - take);
                    if (take > 0) {
                        auto it = current.find(cells[ci]);
                        if ((it->second -= take) == 0) current.erase(it);
                    }
                }
            };
            comp(0, mult);
        };
        rec(0);
        per_group.emplace_back(seen.begin(), seen.end());
    }

    std::vector<Shape> out;
    Shape scratch;
    scratch.params = params;
    scratch.cover_intersection = wK;
    std::function<void(size_t)> cross = [&](size_t gi) {
        if (gi == groups.size()) {
            out.push_back(scratch);
            if ((long long)out.size() > budget)
                throw resource_limit_error("shape enumeration exceeds the budget");
            return;
        }
        for (const CellCount& table : per_group[gi]) {
            AShape a;
            a.cover_set = groups[gi].cover_set;
            for (auto& [cell, cnt] : table) a.cells.emplace_back(cell.first, cell.second, cnt);
            scratch.per_cover_set.push_back(std::move(a));
            cross(gi + 1);
            scratch.per_cover_set.pop_back();
        }
    };
    cross(0);
    return out;
}

bool holds_under_shape(const Graph& g, const TwinCover& cover, const Formula& f, const Shape& s,
                       long long atom_budget) {
    if (f.free_set_vars().size() != 1)
        throw invalid_input_error("holds_under_shape requires exactly one free set variable");
    VertexSet w = realize_representative(cover, s);
    return evaluate_with_solution(g, cover.cover, f, w, s.params.q_S, s.params.q_v, atom_budget);
}

std::optional<ShapeSolution> min_cost_solution(const Graph& g, const TwinCover& cover,
                                               const Shape& s) {
    int n = g.vertex_count();
    if (!s.cover_intersection.is_subset_of(cover.cover))
        throw invalid_input_error("shape cover intersection is not inside the twin cover");
    auto groups = group_cliques(cover);
    if (groups.size() != s.per_cover_set.size())
        throw invalid_input_error("shape does not match the graph's cover sets");

    // Pareto points (internal max cost -> min selected mass) per cover set
    struct Point {
        int intmax;
        long long mass;
        Distribution dist;
    };
    std::vector<std::vector<Point>> pareto(groups.size());
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        const AShape* target = find_ashape(s, groups[gi].cover_set);
        if (target == nullptr)
            throw invalid_input_error("shape is missing a realized cover set");
        std::vector<Point> pts;
        for_each_compatible_distribution(
            groups[gi], *target, s.params.r, s.params.alpha, [&](const Distribution& dist) {
                long long mass = 0;
                int intmax = 0;
                for (const auto& sp : dist)
                    for (auto& [cell, cnt] : sp.cells) {
                        int sel = sel_count(sp.size, cell.first, cell.second, s.params.r);
                        mass += (long long)sel * cnt;
                        intmax = std::max(intmax,
                                          internal_cost(sp.size, cell.first, cell.second,
                                                        s.params.r));
                    }
                pts.push_back({intmax, mass, dist});
                return false; // keep enumerating
            });
        if (pts.empty()) return std::nullopt; // no valid assignment for this A-shape
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
            return std::tie(a.intmax, a.mass) < std::tie(b.intmax, b.mass);
        });
        std::vector<Point> frontier;
        for (auto& p : pts)
            if (frontier.empty() || p.mass < frontier.back().mass) frontier.push_back(std::move(p));
        pareto[gi] = std::move(frontier);
    }

    const VertexSet& wK = s.cover_intersection;
    Bitset wk_bits = wK.to_bitset(n);
    std::vector<int> d_a(groups.size());
    for (size_t gi = 0; gi < groups.size(); ++gi)
        d_a[gi] = groups[gi].cover_set.set_intersect(wK).size();

    for (int t = 0; t <= n; ++t) {
        std::vector<const Point*> chosen(groups.size(), nullptr);
        bool ok = true;
        for (size_t gi = 0; gi < groups.size() && ok; ++gi) {
            int tau = t - d_a[gi];
            const Point* best = nullptr;
            for (const Point& p : pareto[gi])
                if (p.intmax <= tau && (best == nullptr || p.mass < best->mass)) best = &p;
            if (best == nullptr)
                ok = false;
            else
                chosen[gi] = best;
        }
        if (!ok) continue;
        // cover vertices: |N(v) ∩ wK| plus the selected mass of every cover
        // set containing v
        for (int v : cover.cover) {
            long long total = g.neighbor_mask(v).and_count(wk_bits);
            for (size_t gi = 0; gi < groups.size(); ++gi)
                if (groups[gi].cover_set.contains(v)) total += chosen[gi]->mass;
            if (total > t) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::vector<int> selected(wK.begin(), wK.end());
        for (size_t gi = 0; gi < groups.size(); ++gi)
            realize_distribution(groups[gi], chosen[gi]->dist, s.params.r, selected);
        VertexSet w(std::move(selected));
        return ShapeSolution{fair_cost(g, w), w};
    }
    return std::nullopt;
}

FairEvalResult fair_evaluate(const Graph& g, const Formula& f, long long atom_budget) {
    if (f.free_set_vars().size() != 1)
        throw invalid_input_error("fair_evaluate requires exactly one free set variable");
    auto tc = min_twin_cover(g);
    int q_S = f.set_quantifier_count();
    int q_v = f.vertex_quantifier_count();
    int k = tc->cover.size();
    if (k > 30) throw resource_limit_error("twin cover too large for the shape sweep");
    auto base_shapes = enumerate_realizable_shapes(g, *tc, VertexSet{}, q_S, q_v);

    FairEvalResult best;
    const auto& cover_ids = tc->cover.ids();
    for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
        std::vector<int> ids;
        for (int i = 0; i < k; ++i)
            if ((mask >> i) & 1) ids.push_back(cover_ids[i]);
        VertexSet wK(std::move(ids));
        if (best.satisfiable && fair_cost(g, wK) >= best.cost) continue;
        for (const auto& base : base_shapes) {
            Shape s = base;
            s.cover_intersection = wK;
            auto sol = min_cost_solution(g, *tc, s);
            if (!sol) continue;
            if (best.satisfiable && sol->cost >= best.cost) continue;
            if (!evaluate_with_solution(g, tc->cover, f, sol->w, q_S, q_v, atom_budget)) continue;
            best.satisfiable = true;
            best.cost = sol->cost;
            best.w = sol->w;
        }
    }
    return best;
}

} // namespace fair

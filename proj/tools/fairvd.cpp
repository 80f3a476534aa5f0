// fairvd: command line front end for the fair vertex-deletion toolkit.
//
// Subcommands: params, fairvc, mc, faireval, gen, oracle, xcheck.
// Exit codes: 0 success / yes, 1 no / unsat, 2 input error, 3 resource error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fair/fairvc.hpp"
#include "fair/kernel.hpp"
#include "fair/modular.hpp"
#include "fair/params.hpp"
#include "fair/reductions.hpp"
#include "fair/shapes.hpp"

using nlohmann::json;

namespace {

constexpr int EXIT_YES = 0;
constexpr int EXIT_NO = 1;
constexpr int EXIT_RESOURCE = 3;

struct Output {
    bool as_json = false;
    json obj;

    void field(const std::string& key, const json& value) { obj[key] = value; }
    void line(const std::string& text) {
        if (!as_json) std::cout << text << '\n';
    }
    void flush() {
        if (as_json) std::cout << obj.dump(2) << '\n';
    }
};

json witness_json(const fair::VertexSet& w) {
    json arr = json::array();
    for (int v : w) arr.push_back(v);
    return arr;
}

std::string cover_line(const fair::VertexSet& w) {
    std::ostringstream os;
    os << "cover";
    for (int v : w) os << ' ' << v;
    return os.str();
}

uint64_t splitmix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

fair::Graph random_graph(uint64_t& seed, int max_n) {
    int n = 1 + static_cast<int>(splitmix(seed) % static_cast<uint64_t>(max_n));
    double p = (1 + splitmix(seed) % 8) / 10.0;
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((splitmix(seed) >> 11) * 0x1.0p-53 < p) e.emplace_back(u, v);
    return fair::Graph(n, e);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw fair::invalid_input_error("cannot write file: " + path);
    out << content;
}

int run(int argc, char** argv) {
    CLI::App app{"fair vertex-deletion toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit one JSON object instead of text");

    auto* cmd_params =
        app.add_subcommand("params", "twin cover, neighborhood diversity, modular width");
    std::string params_graph;
    cmd_params->add_option("graph", params_graph)->required();

    auto* cmd_fairvc = app.add_subcommand("fairvc", "solve or decide fair vertex cover");
    std::string fairvc_graph, fairvc_method = "dp";
    int fairvc_k = -1;
    int brute_cap = 22;
    long long time_budget_ms = 60000;
    cmd_fairvc->add_option("graph", fairvc_graph)->required();
    cmd_fairvc->add_option("--method", fairvc_method)->check(CLI::IsMember({"dp", "brute", "bnb"}));
    cmd_fairvc->add_option("--k", fairvc_k, "decision mode: is there a cover of fair cost <= k");
    cmd_fairvc->add_option("--cap", brute_cap, "brute-force vertex cap");
    cmd_fairvc->add_option("--time-budget", time_budget_ms, "branch and bound budget in ms");

    auto* cmd_mc = app.add_subcommand("mc", "model check a sentence with kernelization");
    std::string mc_graph, mc_formula;
    long long atom_budget = 1'000'000'000;
    cmd_mc->add_option("graph", mc_graph)->required();
    cmd_mc->add_option("sentence", mc_formula)->required();
    cmd_mc->add_option("--atom-budget", atom_budget);

    auto* cmd_faireval = app.add_subcommand("faireval", "minimum fair cost set satisfying phi(X)");
    std::string fe_graph, fe_formula;
    long long fe_budget = 1'000'000'000;
    cmd_faireval->add_option("graph", fe_graph)->required();
    cmd_faireval->add_option("formula", fe_formula)->required();
    cmd_faireval->add_option("--atom-budget", fe_budget);

    auto* cmd_gen = app.add_subcommand("gen", "emit reduction instance files");
    std::string gen_kind, gen_spec, gen_prefix;
    cmd_gen->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"mcc", "binpack"}));
    cmd_gen->add_option("spec", gen_spec)->required();
    cmd_gen->add_option("-o,--output", gen_prefix)->required();

    auto* cmd_oracle = app.add_subcommand("oracle", "brute-force decision oracles");
    std::string oracle_kind, oracle_graph, oracle_formula;
    int oracle_l = 1, oracle_k = 0, oracle_cap = 20;
    cmd_oracle->add_option("kind", oracle_kind)->required()->check(CLI::IsMember({"lfair"}));
    cmd_oracle->add_option("graph", oracle_graph)->required();
    cmd_oracle->add_option("formula", oracle_formula)->required();
    cmd_oracle->add_option("--l", oracle_l)->required();
    cmd_oracle->add_option("--k", oracle_k)->required();
    cmd_oracle->add_option("--cap-bits", oracle_cap);

    auto* cmd_xcheck = app.add_subcommand("xcheck", "cross-check dp vs brute vs bnb");
    std::string xcheck_graph;
    int xcheck_random = 0, xcheck_max_n = 10;
    uint64_t xcheck_seed = 1;
    cmd_xcheck->add_option("graph", xcheck_graph, "graph file (omit with --random)");
    cmd_xcheck->add_option("--random", xcheck_random, "cross-check N seeded random graphs");
    cmd_xcheck->add_option("--n", xcheck_max_n, "max vertices for --random");
    cmd_xcheck->add_option("--seed", xcheck_seed);

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.as_json = as_json;
    auto started = std::chrono::steady_clock::now();
    auto elapsed_ms = [&]() {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - started)
            .count();
    };
    int exit_code = EXIT_YES;

    if (cmd_params->parsed()) {
        fair::LabeledGraph g = fair::load_graph_file(params_graph);
        auto tc = fair::min_twin_cover(g.graph);
        auto nd = fair::neighborhood_diversity(g.graph);
        int mw = g.graph.vertex_count() == 0 ? 0 : fair::width(fair::decompose(g.graph));
        out.field("command", "params");
        out.field("input", params_graph);
        out.field("result", json{{"twin_cover", tc->cover.size()},
                                 {"neighborhood_diversity", nd.count},
                                 {"modular_width", mw}});
        out.line("twin cover " + std::to_string(tc->cover.size()));
        out.line("neighborhood diversity " + std::to_string(nd.count));
        out.line("modular width " + std::to_string(mw));
    } else if (cmd_fairvc->parsed()) {
        fair::LabeledGraph g = fair::load_graph_file(fairvc_graph);
        out.field("command", "fairvc");
        out.field("input", fairvc_graph);
        fair::VertexSet witness;
        int cost = -1;
        bool decided_yes = true;
        if (fairvc_method == "bnb") {
            int k = fairvc_k >= 0 ? fairvc_k : g.graph.max_degree();
            auto r = fair::solve_bnb(g.graph, k, std::chrono::milliseconds(time_budget_ms));
            if (r.decision == fair::Decision::unknown)
                throw fair::resource_limit_error("branch and bound timed out");
            decided_yes = r.decision == fair::Decision::yes;
            witness = r.cover;
            cost = k;
            out.field("result", decided_yes ? "yes" : "no");
            out.line(decided_yes ? "yes" : "no");
        } else {
            fair::FairVcSolution s = fairvc_method == "dp" ? fair::solve_dp(g.graph)
                                                           : fair::solve_brute(g.graph, brute_cap);
            cost = s.cost;
            witness = s.cover;
            if (fairvc_k >= 0) {
                decided_yes = s.cost <= fairvc_k;
                out.field("result", decided_yes ? "yes" : "no");
                out.line(decided_yes ? "yes" : "no");
            } else {
                out.field("result", "optimum");
            }
            out.line("cost " + std::to_string(s.cost));
            out.field("cost", s.cost);
        }
        if (decided_yes) {
            // every printed witness re-verifies first
            if (!fair::is_vertex_cover(g.graph, witness) ||
                fair::fair_cost(g.graph, witness) > cost)
                throw fair::invalid_state_error("witness failed re-verification");
            out.line(cover_line(witness));
            out.field("witness", witness_json(witness));
        } else {
            exit_code = EXIT_NO;
        }
    } else if (cmd_mc->parsed()) {
        fair::LabeledGraph g = fair::load_graph_file(mc_graph);
        fair::Formula f = fair::load_formula_file(mc_formula);
        fair::ModelCheckResult r = fair::model_check(g.graph, f, atom_budget);
        out.field("command", "mc");
        out.field("input", mc_graph);
        out.field("result", r.holds);
        out.field("kernel", json{{"n", r.report.reduced.graph.vertex_count()},
                                 {"bound", r.report.size_bound},
                                 {"removed", r.report.removed.size()}});
        if (!as_json) std::cout << r.report.dump();
        out.line(r.holds ? "true" : "false");
        if (!r.holds) exit_code = EXIT_NO;
    } else if (cmd_faireval->parsed()) {
        fair::LabeledGraph g = fair::load_graph_file(fe_graph);
        fair::Formula f = fair::load_formula_file(fe_formula);
        fair::FairEvalResult r = fair::fair_evaluate(g.graph, f, fe_budget);
        out.field("command", "faireval");
        out.field("input", fe_graph);
        if (r.satisfiable) {
            fair::Interpretation itp;
            itp.bind(f.free_set_vars()[0], r.w);
            if (!fair::evaluate(fair::LabeledGraph{g.graph, {}}, f, itp, fe_budget) ||
                fair::fair_cost(g.graph, r.w) != r.cost)
                throw fair::invalid_state_error("witness failed re-verification");
            out.field("result", "optimum");
            out.field("cost", r.cost);
            out.field("witness", witness_json(r.w));
            out.line("cost " + std::to_string(r.cost));
            out.line(cover_line(r.w));
        } else {
            out.field("result", "unsat");
            out.line("unsat");
            exit_code = EXIT_NO;
        }
    } else if (cmd_gen->parsed()) {
        std::ifstream in(gen_spec);
        if (!in) throw fair::invalid_input_error("cannot open spec file: " + gen_spec);
        out.field("command", "gen");
        out.field("input", gen_spec);
        if (gen_kind == "mcc") {
            // spec: "mcc <l> <n>" then "edge a b i j" lines
            std::string tok;
            int l = 0, n = 0;
            std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
            std::string line;
            bool header = false;
            while (std::getline(in, line)) {
                std::string body = line.substr(0, line.find('#'));
                std::istringstream ls(body);
                if (!(ls >> tok)) continue;
                if (!header) {
                    if (tok != "mcc" || !(ls >> l >> n))
                        throw fair::invalid_input_error("mcc spec must start with 'mcc <l> <n>'");
                    header = true;
                    continue;
                }
                if (tok != "edge") throw fair::invalid_input_error("expected 'edge a b i j'");
                int a, b, i, j;
                if (!(ls >> a >> b >> i >> j))
                    throw fair::invalid_input_error("expected 'edge a b i j'");
                if (a > b) {
                    std::swap(a, b);
                    std::swap(i, j);
                }
                edges[{a, b}].emplace_back(i, j);
            }
            if (!header) throw fair::invalid_input_error("empty mcc spec");
            fair::MccInstance inst = fair::MccInstance::build(l, std::vector<int>(l, n), edges);
            fair::MccReduction red = fair::gen_fairvc_from_mcc(inst);
            write_file(gen_prefix + ".g", fair::graph_to_text(red.h));
            write_file(gen_prefix + ".map",
                       "role k " + std::to_string(red.k) + "\n" + red.map.to_text());
            out.field("result", json{{"k", red.k}, {"vertices", red.h.vertex_count()}});
            out.line("wrote " + gen_prefix + ".g and " + gen_prefix + ".map (k = " +
                     std::to_string(red.k) + ")");
        } else {
            // spec: "binpack <l> <B>" then "sizes s1 s2 ..."
            std::string tok;
            int l = 0, cap = 0;
            std::vector<int> sizes;
            std::string line;
            bool header = false;
            while (std::getline(in, line)) {
                std::string body = line.substr(0, line.find('#'));
                std::istringstream ls(body);
                if (!(ls >> tok)) continue;
                if (!header) {
                    if (tok != "binpack" || !(ls >> l >> cap))
                        throw fair::invalid_input_error(
                            "binpack spec must start with 'binpack <l> <B>'");
                    header = true;
                    continue;
                }
                if (tok != "sizes") throw fair::invalid_input_error("expected 'sizes s1 s2 ...'");
                int s;
                while (ls >> s) sizes.push_back(s);
            }
            if (!header) throw fair::invalid_input_error("empty binpack spec");
            fair::BinPackingInstance inst{l, cap, sizes};
            fair::LfairReduction red = fair::gen_lfair_from_binpacking(inst);
            write_file(gen_prefix + ".g", fair::graph_to_text(red.graph));
            write_file(gen_prefix + ".f", red.formula.to_text());
            std::ostringstream mapfile;
            mapfile << "role universal " << red.universal << '\n';
            for (size_t i = 0; i < red.clique_ids.size(); ++i) {
                mapfile << "role clique_" << i;
                for (int v : red.clique_ids[i]) mapfile << ' ' << v;
                mapfile << '\n';
            }
            mapfile << "role l " << red.ell << '\n';
            mapfile << "role k " << red.k << '\n';
            write_file(gen_prefix + ".map", mapfile.str());
            out.field("result", json{{"k", red.k}, {"l", red.ell}});
            out.line("wrote " + gen_prefix + ".g, " + gen_prefix + ".f, " + gen_prefix + ".map");
        }
    } else if (cmd_oracle->parsed()) {
        fair::LabeledGraph g = fair::load_graph_file(oracle_graph);
        fair::Formula f = fair::load_formula_file(oracle_formula);
        bool yes = fair::lfair_brute_oracle(g.graph, f, oracle_l, oracle_k, oracle_cap);
        out.field("command", "oracle");
        out.field("input", oracle_graph);
        out.field("result", yes ? "yes" : "no");
        out.line(yes ? "yes" : "no");
        if (!yes) exit_code = EXIT_NO;
    } else if (cmd_xcheck->parsed()) {
        out.field("command", "xcheck");
        std::vector<fair::Graph> pool;
        if (xcheck_random > 0) {
            uint64_t seed = xcheck_seed;
            for (int i = 0; i < xcheck_random; ++i)
                pool.push_back(random_graph(seed, xcheck_max_n));
            out.field("input", "random seed " + std::to_string(xcheck_seed));
        } else {
            if (xcheck_graph.empty())
                throw fair::invalid_input_error("xcheck needs a graph file or --random N");
            pool.push_back(fair::load_graph_file(xcheck_graph).graph);
            out.field("input", xcheck_graph);
        }
        int agree = 0;
        for (const auto& g : pool) {
            if (g.vertex_count() == 0) continue;
            fair::FairVcSolution dp = fair::solve_dp(g);
            fair::FairVcSolution brute = fair::solve_brute(g);
            auto bnb_hi = fair::solve_bnb(g, dp.cost);
            bool ok = dp.cost == brute.cost && bnb_hi.decision == fair::Decision::yes &&
                      fair::is_vertex_cover(g, dp.cover) &&
                      fair::fair_cost(g, dp.cover) <= dp.cost;
            if (ok && dp.cost > 0)
                ok = fair::solve_bnb(g, dp.cost - 1).decision == fair::Decision::no;
            if (!ok) throw fair::invalid_state_error("solver disagreement detected");
            ++agree;
        }
        out.field("result", "agree");
        out.field("count", agree);
        out.line("agree " + std::to_string(agree) + "/" + std::to_string(pool.size()));
    }

    out.field("timings", json{{"total_ms", elapsed_ms()}});
    out.flush();
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fair::resource_limit_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return EXIT_RESOURCE;
    } catch (const fair::invalid_input_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

#include "fair/formula.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace fair {

namespace {

struct Token {
    std::string text; // "(" , ")" or a symbol
    int line;
    int col;
};

bool is_keyword(const std::string& s) {
    static const char* kw[] = {"exists", "forall", "existsS", "forallS", "and", "or",
                               "not",    "implies", "iff",    "adj",     "=",   "in",
                               "label",  "free"};
    return std::find_if(std::begin(kw), std::end(kw),
                        [&](const char* k) { return s == k; }) != std::end(kw);
}

std::vector<Token> tokenize(const std::string& text, int first_line) {
    std::vector<Token> out;
    int line = first_line, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '(' || c == ')') {
            out.push_back({std::string(1, c), line, col});
            ++col;
            ++i;
            continue;
        }
        int start_col = col;
        size_t j = i;
        while (j < text.size() && text[j] != '(' && text[j] != ')' && text[j] != '#' &&
               !isspace(static_cast<unsigned char>(text[j]))) {
            ++j;
            ++col;
        }
        out.push_back({text.substr(i, j - i), line, start_col});
        i = j;
    }
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    FormulaNode parse_all() {
        FormulaNode n = parse_expr();
        if (pos_ < toks_.size())
            throw parse_error("trailing input after formula", toks_[pos_].line, toks_[pos_].col);
        return n;
    }

private:
    const Token& peek() {
        if (pos_ >= toks_.size()) {
            int line = toks_.empty() ? 1 : toks_.back().line;
            int col = toks_.empty() ? 1 : toks_.back().col + 1;
            throw parse_error("unexpected end of input", line, col);
        }
        return toks_[pos_];
    }

    Token next() {
        const Token& t = peek();
        ++pos_;
        return t;
    }

    void expect(const std::string& s) {
        Token t = next();
        if (t.text != s) throw parse_error("expected '" + s + "', got '" + t.text + "'", t.line, t.col);
    }

    std::string symbol(const char* what, bool allow_keyword = false) {
        Token t = next();
        if (t.text == "(" || t.text == ")")
            throw parse_error(std::string("expected ") + what, t.line, t.col);
        if (!allow_keyword && is_keyword(t.text))
            throw parse_error("keyword '" + t.text + "' cannot be used as " + what, t.line, t.col);
        return t.text;
    }

    FormulaNode parse_expr() {
        expect("(");
        Token head = next();
        FormulaNode n;
        auto quant = [&](FormulaKind k) {
            n.kind = k;
            n.name = symbol("a variable name");
            n.children.push_back(parse_expr());
            expect(")");
        };
        if (head.text == "exists") {
            quant(FormulaKind::exists_vertex);
        } else if (head.text == "forall") {
            quant(FormulaKind::forall_vertex);
        } else if (head.text == "existsS") {
            quant(FormulaKind::exists_set);
        } else if (head.text == "forallS") {
            quant(FormulaKind::forall_set);
        } else if (head.text == "and" || head.text == "or") {
            n.kind = head.text == "and" ? FormulaKind::logical_and : FormulaKind::logical_or;
            while (peek().text != ")") n.children.push_back(parse_expr());
            if (n.children.size() < 2)
                throw parse_error("'" + head.text + "' needs at least two operands", head.line,
                                  head.col);
            expect(")");
        } else if (head.text == "not") {
            n.kind = FormulaKind::logical_not;
            n.children.push_back(parse_expr());
            expect(")");
        } else if (head.text == "implies" || head.text == "iff") {
            n.kind = head.text == "implies" ? FormulaKind::implies : FormulaKind::iff;
            n.children.push_back(parse_expr());
            n.children.push_back(parse_expr());
            expect(")");
        } else if (head.text == "adj" || head.text == "=") {
            n.kind = head.text == "adj" ? FormulaKind::adjacent : FormulaKind::equals;
            n.name = symbol("a vertex variable");
            n.name2 = symbol("a vertex variable");
            expect(")");
        } else if (head.text == "in") {
            n.kind = FormulaKind::member;
            n.name = symbol("a vertex variable");
            n.name2 = symbol("a set variable");
            expect(")");
        } else if (head.text == "label") {
            n.kind = FormulaKind::has_label;
            n.name = symbol("a label name", true);
            n.name2 = symbol("a vertex variable");
            expect(")");
        } else {
            throw parse_error("unknown form '" + head.text + "'", head.line, head.col);
        }
        return n;
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

enum class VarKind { vertex, set };

void check_bindings(const FormulaNode& n, std::vector<std::pair<std::string, VarKind>>& scope) {
    auto resolve = [&](const std::string& name, VarKind want) {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
            if (it->first == name) {
                if (it->second != want)
                    throw invalid_input_error(
                        "variable '" + name + "' used as " +
                        (want == VarKind::vertex ? "vertex" : "set") + " variable but bound as " +
                        (it->second == VarKind::vertex ? "vertex" : "set") + " variable");
                return;
            }
        }
        throw invalid_input_error("unbound variable '" + name + "'");
    };
    switch (n.kind) {
    case FormulaKind::exists_vertex:
    case FormulaKind::forall_vertex:
        scope.emplace_back(n.name, VarKind::vertex);
        check_bindings(n.children[0], scope);
        scope.pop_back();
        break;
    case FormulaKind::exists_set:
    case FormulaKind::forall_set:
        scope.emplace_back(n.name, VarKind::set);
        check_bindings(n.children[0], scope);
        scope.pop_back();
        break;
    case FormulaKind::adjacent:
    case FormulaKind::equals:
        resolve(n.name, VarKind::vertex);
        resolve(n.name2, VarKind::vertex);
        break;
    case FormulaKind::member:
        resolve(n.name, VarKind::vertex);
        resolve(n.name2, VarKind::set);
        break;
    case FormulaKind::has_label:
        resolve(n.name2, VarKind::vertex);
        break;
    default:
        for (const auto& c : n.children) check_bindings(c, scope);
    }
}

void count_quantifiers(const FormulaNode& n, int& q_s, int& q_v) {
    switch (n.kind) {
    case FormulaKind::exists_vertex:
    case FormulaKind::forall_vertex:
        ++q_v;
        break;
    case FormulaKind::exists_set:
    case FormulaKind::forall_set:
        ++q_s;
        break;
    default:
        break;
    }
    for (const auto& c : n.children) count_quantifiers(c, q_s, q_v);
}

void write_node(std::ostream& os, const FormulaNode& n) {
    os << '(';
    switch (n.kind) {
    case FormulaKind::exists_vertex: os << "exists " << n.name << ' '; break;
    case FormulaKind::forall_vertex: os << "forall " << n.name << ' '; break;
    case FormulaKind::exists_set: os << "existsS " << n.name << ' '; break;
    case FormulaKind::forall_set: os << "forallS " << n.name << ' '; break;
    case FormulaKind::logical_and: os << "and"; break;
    case FormulaKind::logical_or: os << "or"; break;
    case FormulaKind::logical_not: os << "not "; break;
    case FormulaKind::implies: os << "implies "; break;
    case FormulaKind::iff: os << "iff "; break;
    case FormulaKind::adjacent: os << "adj " << n.name << ' ' << n.name2; break;
    case FormulaKind::equals: os << "= " << n.name << ' ' << n.name2; break;
    case FormulaKind::member: os << "in " << n.name << ' ' << n.name2; break;
    case FormulaKind::has_label: os << "label " << n.name << ' ' << n.name2; break;
    }
    for (size_t i = 0; i < n.children.size(); ++i) {
        if ((n.kind == FormulaKind::logical_and || n.kind == FormulaKind::logical_or))
            os << ' ';
        else if (i > 0)
            os << ' ';
        write_node(os, n.children[i]);
    }
    os << ')';
}

} // namespace

Formula::Formula(FormulaNode root, std::vector<std::string> free_set_vars)
    : root_(std::move(root)), free_(std::move(free_set_vars)) {
    for (size_t i = 0; i < free_.size(); ++i)
        for (size_t j = i + 1; j < free_.size(); ++j)
            if (free_[i] == free_[j])
                throw invalid_input_error("duplicate free variable '" + free_[i] + "'");
    std::vector<std::pair<std::string, VarKind>> scope;
    for (const auto& x : free_) scope.emplace_back(x, VarKind::set);
    check_bindings(root_, scope);
    fair::count_quantifiers(root_, q_s_, q_v_);
}

Formula Formula::parse(const std::string& text) {
    // peel an optional "free X1 X2 ..." header off the first meaningful line,
    // keeping line numbering intact for parse errors
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> free_vars;
    std::ostringstream rest;
    bool seen_content = false;
    while (std::getline(in, line)) {
        std::string body = line.substr(0, line.find('#'));
        bool is_blank = body.find_first_not_of(" \t\r") == std::string::npos;
        if (!seen_content && !is_blank) {
            seen_content = true;
            std::istringstream ls(body);
            std::string first;
            ls >> first;
            if (first == "free") {
                std::string name;
                while (ls >> name) {
                    if (is_keyword(name) || name.find('(') != std::string::npos ||
                        name.find(')') != std::string::npos)
                        throw invalid_input_error("bad free variable name '" + name + "'");
                    free_vars.push_back(name);
                }
                rest << '\n';
                continue;
            }
        }
        rest << line << '\n';
    }
    Parser p(tokenize(rest.str(), 1));
    return Formula(p.parse_all(), std::move(free_vars));
}

std::string Formula::to_text() const {
    std::ostringstream os;
    if (!free_.empty()) {
        os << "free";
        for (const auto& x : free_) os << ' ' << x;
        os << '\n';
    }
    write_node(os, root_);
    os << '\n';
    return os.str();
}

const VertexSet* Interpretation::find(const std::string& name) const {
    for (const auto& [k, s] : sets)
        if (k == name) return &s;
    return nullptr;
}

void Interpretation::bind(const std::string& name, VertexSet s) {
    for (auto& [k, v] : sets) {
        if (k == name) {
            v = std::move(s);
            return;
        }
    }
    sets.emplace_back(name, std::move(s));
}

namespace {

// Flattened AST with variable occurrences resolved to slots, so evaluation
// does no string work.
struct CNode {
    FormulaKind kind;
    int a = -1; // quantifier slot / first atom slot / label index
    int b = -1;
    std::vector<int> children;
};

struct CompiledFormula {
    std::vector<CNode> nodes;
    int root = -1;
    int vertex_slots = 0;
    int set_slots = 0;
    std::vector<int> free_slot; // free var index -> set slot
};

struct CompileScope {
    std::string name;
    VarKind kind;
    int slot;
};

int compile_node(const FormulaNode& n, const LabeledGraph& g, CompiledFormula& out,
                 std::vector<CompileScope>& scope) {
    auto resolve = [&](const std::string& name) -> const CompileScope& {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->name == name) return *it;
        throw invalid_input_error("unbound variable '" + name + "'");
    };
    CNode cn;
    cn.kind = n.kind;
    switch (n.kind) {
    case FormulaKind::exists_vertex:
    case FormulaKind::forall_vertex: {
        cn.a = out.vertex_slots++;
        scope.push_back({n.name, VarKind::vertex, cn.a});
        cn.children.push_back(compile_node(n.children[0], g, out, scope));
        scope.pop_back();
        break;
    }
    case FormulaKind::exists_set:
    case FormulaKind::forall_set: {
        cn.a = out.set_slots++;
        scope.push_back({n.name, VarKind::set, cn.a});
        cn.children.push_back(compile_node(n.children[0], g, out, scope));
        scope.pop_back();
        break;
    }
    case FormulaKind::adjacent:
    case FormulaKind::equals:
        cn.a = resolve(n.name).slot;
        cn.b = resolve(n.name2).slot;
        break;
    case FormulaKind::member:
        cn.a = resolve(n.name).slot;
        cn.b = resolve(n.name2).slot;
        break;
    case FormulaKind::has_label: {
        int idx = -1;
        for (size_t i = 0; i < g.labels.size(); ++i)
            if (g.labels[i].first == n.name) idx = static_cast<int>(i);
        if (idx < 0) throw invalid_input_error("unknown label '" + n.name + "'");
        cn.a = idx;
        cn.b = resolve(n.name2).slot;
        break;
    }
    default:
        for (const auto& c : n.children) cn.children.push_back(compile_node(c, g, out, scope));
        break;
    }
    out.nodes.push_back(std::move(cn));
    return static_cast<int>(out.nodes.size() - 1);
}

struct EvalCtx {
    const Graph* g;
    std::vector<Bitset> label_masks;
    std::vector<int> vslot;
    std::vector<Bitset> sslot;
    long long budget;
    const std::vector<CNode>* nodes;

    void charge() {
        if (--budget < 0) throw resource_limit_error("formula evaluation atom budget exceeded");
    }
};

bool eval_node(int id, EvalCtx& c) {
    const CNode& n = (*c.nodes)[id];
    switch (n.kind) {
    case FormulaKind::adjacent:
        c.charge();
        return c.g->has_edge(c.vslot[n.a], c.vslot[n.b]);
    case FormulaKind::equals:
        c.charge();
        return c.vslot[n.a] == c.vslot[n.b];
    case FormulaKind::member:
        c.charge();
        return c.sslot[n.b].test(c.vslot[n.a]);
    case FormulaKind::has_label:
        c.charge();
        return c.label_masks[n.a].test(c.vslot[n.b]);
    case FormulaKind::logical_not:
        return !eval_node(n.children[0], c);
    case FormulaKind::logical_and:
        for (int ch : n.children)
            if (!eval_node(ch, c)) return false;
        return true;
    case FormulaKind::logical_or:
        for (int ch : n.children)
            if (eval_node(ch, c)) return true;
        return false;
    case FormulaKind::implies:
        return !eval_node(n.children[0], c) || eval_node(n.children[1], c);
    case FormulaKind::iff:
        return eval_node(n.children[0], c) == eval_node(n.children[1], c);
    case FormulaKind::exists_vertex:
        for (int v = 0; v < c.g->vertex_count(); ++v) {
            c.vslot[n.a] = v;
            if (eval_node(n.children[0], c)) return true;
        }
        return false;
    case FormulaKind::forall_vertex:
        for (int v = 0; v < c.g->vertex_count(); ++v) {
            c.vslot[n.a] = v;
            if (!eval_node(n.children[0], c)) return false;
        }
        return true;
    case FormulaKind::exists_set: {
        Bitset& s = c.sslot[n.a];
        s = Bitset(c.g->vertex_count());
        do {
            if (eval_node(n.children[0], c)) return true;
        } while (s.next_subset());
        return false;
    }
    case FormulaKind::forall_set: {
        Bitset& s = c.sslot[n.a];
        s = Bitset(c.g->vertex_count());
        do {
            if (!eval_node(n.children[0], c)) return false;
        } while (s.next_subset());
        return true;
    }
    }
    throw invalid_state_error("unreachable formula node kind");
}

} // namespace

struct Evaluator::Impl {
    CompiledFormula cf;
    EvalCtx ctx;
    const Graph* graph;
    std::vector<std::string> free_names;
};

Evaluator::Evaluator(const LabeledGraph& g, const Formula& f) : impl_(new Impl) {
    std::vector<CompileScope> scope;
    // free set variables occupy the first set slots
    for (const auto& x : f.free_set_vars()) {
        int slot = impl_->cf.set_slots++;
        impl_->cf.free_slot.push_back(slot);
        scope.push_back({x, VarKind::set, slot});
    }
    impl_->cf.root = compile_node(f.root(), g, impl_->cf, scope);
    impl_->graph = &g.graph;
    impl_->free_names = f.free_set_vars();
    impl_->ctx.g = &g.graph;
    impl_->ctx.nodes = &impl_->cf.nodes;
    for (const auto& [name, s] : g.labels)
        impl_->ctx.label_masks.push_back(s.to_bitset(g.graph.vertex_count()));
    impl_->ctx.vslot.assign(std::max(1, impl_->cf.vertex_slots), 0);
    impl_->ctx.sslot.assign(std::max(1, impl_->cf.set_slots), Bitset(g.graph.vertex_count()));
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;

bool Evaluator::run(const std::vector<Bitset>& free_values, long long atom_budget) {
    if (free_values.size() != impl_->cf.free_slot.size())
        throw invalid_input_error("evaluator given " + std::to_string(free_values.size()) +
                                  " sets for " + std::to_string(impl_->cf.free_slot.size()) +
                                  " free variables");
    for (size_t i = 0; i < free_values.size(); ++i)
        impl_->ctx.sslot[impl_->cf.free_slot[i]] = free_values[i];
    impl_->ctx.budget = atom_budget;
    return eval_node(impl_->cf.root, impl_->ctx);
}

bool evaluate(const LabeledGraph& g, const Formula& f, const Interpretation& itp,
              long long atom_budget) {
    Evaluator ev(g, f);
    std::vector<Bitset> values;
    for (const auto& name : f.free_set_vars()) {
        const VertexSet* w = itp.find(name);
        if (w == nullptr)
            throw invalid_input_error("interpretation missing free variable '" + name + "'");
        values.push_back(w->to_bitset(g.graph.vertex_count()));
    }
    return ev.run(values, atom_budget);
}

bool evaluate(const LabeledGraph& g, const Formula& f, long long atom_budget) {
    return evaluate(g, f, Interpretation{}, atom_budget);
}

Formula load_formula_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input_error("cannot open formula file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return Formula::parse(buf.str());
}

} // namespace fair

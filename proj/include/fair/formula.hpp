#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fair/graph.hpp"

namespace fair {

// MSO1 over labeled graphs: vertex and set quantifiers, boolean connectives,
// atoms adj/=/in/label. Concrete syntax is S-expressions, e.g.
//   (forall u (forall v (implies (adj u v) (or (in u X) (in v X)))))
enum class FormulaKind : uint8_t {
    exists_vertex,
    forall_vertex,
    exists_set,
    forall_set,
    logical_and,
    logical_or,
    logical_not,
    implies,
    iff,
    adjacent, // adj x y
    equals,   // = x y
    member,   // in x X
    has_label // label L x
};

struct FormulaNode {
    FormulaKind kind;
    std::string name;  // bound variable, first atom argument, or label name
    std::string name2; // second atom argument
    std::vector<FormulaNode> children;
};

struct parse_error : invalid_input_error {
    parse_error(const std::string& msg, int line, int col)
        : invalid_input_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

class Formula {
public:
    Formula(FormulaNode root, std::vector<std::string> free_set_vars);

    // Full file text: optional "free X1 X2 ..." header, '#' comments, one
    // S-expression. Throws parse_error with position or invalid_input_error
    // naming an unbound variable.
    static Formula parse(const std::string& text);

    const FormulaNode& root() const { return root_; }
    const std::vector<std::string>& free_set_vars() const { return free_; }

    int set_quantifier_count() const { return q_s_; }    // q_S
    int vertex_quantifier_count() const { return q_v_; } // q_v

    std::string to_text() const;

private:
    FormulaNode root_;
    std::vector<std::string> free_;
    int q_s_ = 0;
    int q_v_ = 0;
};

// Assignment of the formula's free set variables.
struct Interpretation {
    std::vector<std::pair<std::string, VertexSet>> sets;

    const VertexSet* find(const std::string& name) const;
    void bind(const std::string& name, VertexSet s);
};

// Standard Tarskian semantics; vertex quantifiers range over V, set
// quantifiers over all subsets of V. Exceeding atom_budget atom evaluations
// raises resource_limit_error. Meant for kernel-sized graphs.
bool evaluate(const LabeledGraph& g, const Formula& f, const Interpretation& itp,
              long long atom_budget = 1'000'000'000);
bool evaluate(const LabeledGraph& g, const Formula& f, long long atom_budget = 1'000'000'000);

// Compile-once evaluator for tight loops over many interpretations of the
// same formula on the same graph. Not thread-safe; the graph must outlive it.
class Evaluator {
public:
    Evaluator(const LabeledGraph& g, const Formula& f);
    Evaluator(LabeledGraph&&, const Formula&) = delete; // graph must outlive
    ~Evaluator();
    Evaluator(Evaluator&&) noexcept;

    // masks aligned with the formula's free variable order, sized to the graph
    bool run(const std::vector<Bitset>& free_values, long long atom_budget = 1'000'000'000);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Formula load_formula_file(const std::string& path);

} // namespace fair

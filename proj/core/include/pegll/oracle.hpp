// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pegll/forest_tree.hpp"
#include "pegll/grammar.hpp"
#include "pegll/lexer.hpp"

namespace pegll::oracle {

// Set-valued evaluation result. `extents` holds every reachable end position;
// `failed` records whether some path of the evaluation fails. Both can hold
// at once when unordered choice is involved.
struct EvalResult {
    std::vector<int> extents;  // sorted, deduplicated
    bool failed = false;

    bool matched() const { return !extents.empty(); }
    friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

// Direct interpreter over a desugared, left-recursion-free grammar. Tokens
// are matched through the same lexer layer as the engine. Memoized per
// (expression, position); purely functional per instance.
class Evaluator {
public:
    Evaluator(const Grammar& g, const LexTable& lex, std::string_view input);

    EvalResult eval_rule(int rule_index, int pos);
    EvalResult eval(const Expr& e, int pos);
    EvalResult eval_start() { return eval_rule(g_.start_index(), 0); }

    // Committed recursive-descent derivation for grammars without unordered
    // choice: at most one tree per (rule, position).
    std::optional<ParseTree> witness(int rule_index, int pos);

    int64_t eval_count() const { return eval_count_; }
    LexSession& lexer() { return lex_; }

private:
    EvalResult eval_uncached(const Expr& e, int pos);
    EvalResult eval_seq(const std::vector<Expr>& elems, size_t from, int pos);

    const Grammar& g_;
    LexSession lex_;
    std::unordered_map<uint64_t, EvalResult> memo_;  // (expr identity, pos)
    std::unordered_map<const Expr*, int> expr_ids_;
    int64_t eval_count_ = 0;
};

}  // namespace pegll::oracle

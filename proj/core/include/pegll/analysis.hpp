// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <vector>

#include "pegll/grammar.hpp"
#include "pegll/token_set.hpp"

namespace pegll {

// Per-nonterminal nullable/FIRST, indexed by rule position. Lookahead atoms
// are transparent: they contribute no FIRST tokens and count as nullable,
// a safe over-approximation for descriptor filtering.
struct GrammarAnalysis {
    std::vector<bool> nullable;
    std::vector<TokenSet> first;
};

// Least fixpoints over a desugared grammar.
std::vector<bool> compute_nullable(const Grammar& g);
std::vector<TokenSet> compute_first(const Grammar& g, const std::vector<bool>& nullable);
GrammarAnalysis analyze(const Grammar& g);

// Expression-level queries (valid for sugared expressions too).
bool nullable_expr(const Grammar& g, const std::vector<bool>& nullable, const Expr& e);
TokenSet first_expr(const Grammar& g, const GrammarAnalysis& a, const Expr& e);

// Reports every nonterminal on a "can invoke at the same input position"
// cycle: the closure over nullable prefixes, looking through lookaheads.
// Empty result means the grammar is accepted.
Diagnostics check_left_recursion(const Grammar& g, const GrammarAnalysis& a);

}  // namespace pegll

// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <string>
#include <vector>

#include "pegll/diagnostics.hpp"

namespace pegll {

enum class ExprKind {
    literal,      // terminal reference by token name (inline literals use their quoted spelling)
    nonterminal,  // rule reference
    empty,        // eps
    fail,         // never matches; synthesized only, no surface syntax
    seq,          // x1 ... xd
    ordered,      // t1 / ... / tp
    unordered,    // t1 | ... | tp
    and_pred,     // &x
    not_pred,     // !x
    opt,          // x?
    star,         // x*
    plus,         // x+
    group,        // ( x )
};

// Grammar expression AST. A tagged tree: `name` is set for literal/nonterminal,
// `children` for the composite kinds.
struct Expr {
    ExprKind kind = ExprKind::empty;
    std::string name;
    std::vector<Expr> children;
    SourceLoc loc;

    static Expr lit(std::string n, SourceLoc l = {}) { return {ExprKind::literal, std::move(n), {}, l}; }
    static Expr nt(std::string n, SourceLoc l = {}) { return {ExprKind::nonterminal, std::move(n), {}, l}; }
    static Expr eps(SourceLoc l = {}) { return {ExprKind::empty, {}, {}, l}; }
    static Expr bottom(SourceLoc l = {}) { return {ExprKind::fail, {}, {}, l}; }
    static Expr make(ExprKind k, std::vector<Expr> kids, SourceLoc l = {}) {
        return {k, {}, std::move(kids), l};
    }
};

// Structural equality, ignoring source locations.
bool same_structure(const Expr& a, const Expr& b);

// Render an expression in DSL-ish notation (for diagnostics and dumps).
std::string to_string(const Expr& e);

}  // namespace pegll

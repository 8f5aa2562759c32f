// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/oracle.hpp"

#include <algorithm>
#include <cassert>

namespace pegll::oracle {

namespace {

void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

void merge_into(std::vector<int>& into, const std::vector<int>& from) {
    for (int x : from) insert_sorted(into, x);
}

}  // namespace

Evaluator::Evaluator(const Grammar& g, const LexTable& lex, std::string_view input)
    : g_(g), lex_(lex, input) {}

EvalResult Evaluator::eval_rule(int rule_index, int pos) {
    assert(rule_index >= 0);
    return eval(g_.rules[rule_index].body, pos);
}

EvalResult Evaluator::eval(const Expr& e, int pos) {
    int id;
    auto idit = expr_ids_.find(&e);
    if (idit != expr_ids_.end()) {
        id = idit->second;
    } else {
        id = static_cast<int>(expr_ids_.size());
        expr_ids_.emplace(&e, id);
    }
    uint64_t k = (static_cast<uint64_t>(static_cast<uint32_t>(id)) << 32) |
                 static_cast<uint32_t>(pos);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    EvalResult r = eval_uncached(e, pos);
    return memo_.emplace(k, std::move(r)).first->second;
}

EvalResult Evaluator::eval_uncached(const Expr& e, int pos) {
    eval_count_++;
    switch (e.kind) {
        case ExprKind::empty: return {{pos}, false};
        case ExprKind::fail: return {{}, true};
        case ExprKind::literal: {
            int tok = g_.token_id(e.name);
            int r = lex_.tokens(pos).extent_of(tok);
            if (r < 0) return {{}, true};
            return {{r}, false};
        }
        case ExprKind::nonterminal: {
            int idx = g_.rule_index(e.name);
            assert(idx >= 0);
            return eval(g_.rules[idx].body, pos);
        }
        case ExprKind::seq: return eval_seq(e.children, 0, pos);
        case ExprKind::ordered: {
            EvalResult out;
            out.failed = true;
            for (const Expr& alt : e.children) {
                EvalResult r = eval(alt, pos);
                merge_into(out.extents, r.extents);
                out.failed = r.failed;
                if (!r.failed) break;  // later alternates are reached only through failure
            }
            return out;
        }
        case ExprKind::unordered: {
            EvalResult out;
            out.failed = true;
            for (const Expr& alt : e.children) {
                EvalResult r = eval(alt, pos);
                merge_into(out.extents, r.extents);
                out.failed = out.failed && r.failed;
            }
            return out;
        }
        case ExprKind::and_pred: {
            EvalResult r = eval(e.children[0], pos);
            EvalResult out;
            if (r.matched()) out.extents.push_back(pos);
            out.failed = r.failed;
            return out;
        }
        case ExprKind::not_pred: {
            EvalResult r = eval(e.children[0], pos);
            EvalResult out;
            if (r.failed) out.extents.push_back(pos);
            out.failed = r.matched();
            return out;
        }
        case ExprKind::opt:
        case ExprKind::star:
        case ExprKind::plus:
        case ExprKind::group:
            assert(false && "oracle requires a desugared grammar");
            return {{}, true};
    }
    return {{}, true};
}

EvalResult Evaluator::eval_seq(const std::vector<Expr>& elems, size_t from, int pos) {
    if (from == elems.size()) return {{pos}, false};
    EvalResult head = eval(elems[from], pos);
    EvalResult out;
    out.failed = head.failed;
    for (int x : head.extents) {
        EvalResult rest = eval_seq(elems, from + 1, x);
        merge_into(out.extents, rest.extents);
        out.failed = out.failed || rest.failed;
    }
    return out;
}

namespace {

bool has_unordered(const Grammar& g) {
    for (const Rule& r : g.rules)
        if (r.body.kind == ExprKind::unordered && r.body.children.size() > 1) return true;
    return false;
}

}  // namespace

std::optional<ParseTree> Evaluator::witness(int rule_index, int pos) {
    assert(!has_unordered(g_) && "witness derivations are defined for pure-PEG grammars");
    const Rule& rule = g_.rules[rule_index];
    for (size_t a = 0; a < rule.body.children.size(); ++a) {
        const Expr& alt = rule.body.children[a];
        ParseTree node{ParseTree::Kind::nonterminal, rule.name, static_cast<int>(a) + 1,
                       pos,  pos,  {}};
        if (alt.kind == ExprKind::empty) return node;
        assert(alt.kind == ExprKind::seq);
        int at = pos;
        bool ok = true;
        for (const Expr& atom : alt.children) {
            switch (atom.kind) {
                case ExprKind::literal: {
                    int r = lex_.tokens(at).extent_of(g_.token_id(atom.name));
                    if (r < 0) {
                        ok = false;
                        break;
                    }
                    node.children.push_back({ParseTree::Kind::token, atom.name, 0, at, r, {}});
                    at = r;
                    break;
                }
                case ExprKind::nonterminal: {
                    auto sub = witness(g_.rule_index(atom.name), at);
                    if (!sub) {
                        ok = false;
                        break;
                    }
                    at = sub->k;
                    node.children.push_back(std::move(*sub));
                    break;
                }
                case ExprKind::and_pred:
                case ExprKind::not_pred: {
                    EvalResult r = eval(atom, at);
                    if (!r.matched()) {
                        ok = false;
                        break;
                    }
                    std::string text =
                        (atom.kind == ExprKind::and_pred ? "&" : "!") + atom.children[0].name;
                    node.children.push_back({ParseTree::Kind::lookahead, text, 0, at, at, {}});
                    break;
                }
                default:
                    assert(false && "witness requires a desugared grammar");
                    ok = false;
            }
            if (!ok) break;
        }
        if (ok) {
            node.k = at;
            return node;
        }
    }
    return std::nullopt;
}

}  // namespace pegll::oracle

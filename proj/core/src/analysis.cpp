// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/analysis.hpp"

#include <algorithm>
#include <cassert>

namespace pegll {

bool nullable_expr(const Grammar& g, const std::vector<bool>& nullable, const Expr& e) {
    switch (e.kind) {
        case ExprKind::empty: return true;
        case ExprKind::fail:
        case ExprKind::literal: return false;
        case ExprKind::nonterminal: {
            int i = g.rule_index(e.name);
            return i >= 0 && nullable[i];
        }
        case ExprKind::and_pred:
        case ExprKind::not_pred: return true;  // zero-width
        case ExprKind::seq:
            return std::all_of(e.children.begin(), e.children.end(),
                               [&](const Expr& c) { return nullable_expr(g, nullable, c); });
        case ExprKind::ordered:
        case ExprKind::unordered:
            return std::any_of(e.children.begin(), e.children.end(),
                               [&](const Expr& c) { return nullable_expr(g, nullable, c); });
        case ExprKind::opt:
        case ExprKind::star: return true;
        case ExprKind::plus:
        case ExprKind::group: return nullable_expr(g, nullable, e.children[0]);
    }
    return false;
}

TokenSet first_expr(const Grammar& g, const GrammarAnalysis& a, const Expr& e) {
    TokenSet out;
    switch (e.kind) {
        case ExprKind::empty:
        case ExprKind::fail:
        case ExprKind::and_pred:
        case ExprKind::not_pred: break;  // transparent
        case ExprKind::literal: {
            int id = g.token_id(e.name);
            if (id >= 0) out.insert(id);
            break;
        }
        case ExprKind::nonterminal: {
            int i = g.rule_index(e.name);
            if (i >= 0) out.merge(a.first[i]);
            break;
        }
        case ExprKind::seq:
            for (const Expr& c : e.children) {
                out.merge(first_expr(g, a, c));
                if (!nullable_expr(g, a.nullable, c)) break;
            }
            break;
        case ExprKind::ordered:
        case ExprKind::unordered:
            for (const Expr& c : e.children) out.merge(first_expr(g, a, c));
            break;
        case ExprKind::opt:
        case ExprKind::star:
        case ExprKind::plus:
        case ExprKind::group: out = first_expr(g, a, e.children[0]); break;
    }
    return out;
}

std::vector<bool> compute_nullable(const Grammar& g) {
    std::vector<bool> nullable(g.rules.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < g.rules.size(); ++i) {
            if (nullable[i]) continue;
            if (nullable_expr(g, nullable, g.rules[i].body)) {
                nullable[i] = true;
                changed = true;
            }
        }
    }
    return nullable;
}

std::vector<TokenSet> compute_first(const Grammar& g, const std::vector<bool>& nullable) {
    GrammarAnalysis a{nullable, std::vector<TokenSet>(g.rules.size())};
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < g.rules.size(); ++i)
            if (a.first[i].merge(first_expr(g, a, g.rules[i].body))) changed = true;
    }
    return std::move(a.first);
}

GrammarAnalysis analyze(const Grammar& g) {
    GrammarAnalysis a;
    a.nullable = compute_nullable(g);
    a.first = compute_first(g, a.nullable);
    return a;
}

namespace {

// Edges of the "invokes at the same input position" relation.
std::vector<std::vector<int>> same_position_graph(const Grammar& g,
                                                  const std::vector<bool>& nullable) {
    std::vector<std::vector<int>> edges(g.rules.size());
    auto add_edge = [&](int from, const std::string& to_name) {
        int to = g.rule_index(to_name);
        if (to < 0) return;
        auto& v = edges[from];
        if (std::find(v.begin(), v.end(), to) == v.end()) v.push_back(to);
    };
    for (size_t i = 0; i < g.rules.size(); ++i) {
        const Expr& body = g.rules[i].body;
        for (const Expr& alt : body.children) {
            if (alt.kind != ExprKind::seq) continue;
            for (const Expr& atom : alt.children) {
                if (atom.kind == ExprKind::nonterminal) {
                    add_edge(static_cast<int>(i), atom.name);
                    int to = g.rule_index(atom.name);
                    if (to < 0 || !nullable[to]) break;
                } else if (atom.kind == ExprKind::and_pred || atom.kind == ExprKind::not_pred) {
                    add_edge(static_cast<int>(i), atom.children[0].name);
                    // lookaheads consume nothing; keep scanning
                } else if (atom.kind == ExprKind::empty) {
                    continue;
                } else {
                    break;  // terminal (or fail): position advances or path dies
                }
            }
        }
    }
    return edges;
}

// Tarjan SCC, iterative.
std::vector<std::vector<int>> sccs(const std::vector<std::vector<int>>& edges) {
    int n = static_cast<int>(edges.size());
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int next_index = 0;

    struct Frame {
        int v;
        size_t child;
    };
    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        std::vector<Frame> frames{{start, 0}};
        index[start] = low[start] = next_index++;
        stack.push_back(start);
        on_stack[start] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < edges[f.v].size()) {
                int w = edges[f.v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                    } while (w != f.v);
                    std::sort(comp.begin(), comp.end());
                    out.push_back(std::move(comp));
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// A concrete cycle through `root` staying inside the component.
std::vector<int> find_cycle(const std::vector<std::vector<int>>& edges,
                            const std::vector<int>& comp, int root) {
    std::vector<bool> in_comp(edges.size(), false);
    for (int v : comp) in_comp[v] = true;
    std::vector<int> parent(edges.size(), -1);
    std::vector<bool> seen(edges.size(), false);
    std::vector<int> queue{root};
    seen[root] = true;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int w : edges[v]) {
            if (!in_comp[w]) continue;
            if (w == root) {
                std::vector<int> back;
                for (int x = v; x != -1; x = parent[x]) back.push_back(x);
                std::vector<int> path{root};
                for (auto it = back.rbegin(); it != back.rend(); ++it)
                    if (*it != root || path.size() > 1) path.push_back(*it);
                path.push_back(root);
                return path;
            }
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    return {root, root};  // unreachable for a genuine SCC
}

}  // namespace

Diagnostics check_left_recursion(const Grammar& g, const GrammarAnalysis& a) {
    Diagnostics diags;
    auto edges = same_position_graph(g, a.nullable);
    for (const auto& comp : sccs(edges)) {
        bool cyclic = comp.size() > 1;
        if (!cyclic) {
            int v = comp[0];
            cyclic = std::find(edges[v].begin(), edges[v].end(), v) != edges[v].end();
        }
        if (!cyclic) continue;
        auto cycle = find_cycle(edges, comp, comp[0]);
        std::string msg = "left recursion: ";
        for (size_t i = 0; i < cycle.size(); ++i) {
            if (i) msg += " -> ";
            msg += g.rules[cycle[i]].name;
        }
        diags.push_back({g.rules[comp[0]].loc, std::move(msg)});
    }
    return diags;
}

}  // namespace pegll

// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/forest.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace pegll {

namespace {

void print_tree(std::ostream& os, const ParseTree& t, int depth) {
    for (int i = 0; i < depth; ++i) os << "  ";
    switch (t.kind) {
        case ParseTree::Kind::nonterminal:
            os << t.name << " (alt" << t.alt << ") [" << t.i << "," << t.k << ")\n";
            break;
        case ParseTree::Kind::token:
            os << t.name << " [" << t.i << "," << t.k << ")\n";
            break;
        case ParseTree::Kind::lookahead:
            os << t.name << " [" << t.i << "," << t.k << ")\n";
            break;
    }
    for (const ParseTree& c : t.children) print_tree(os, c, depth + 1);
}

std::string tree_key(const ParseTree& t) {
    std::ostringstream os;
    print_tree(os, t, 0);
    return os.str();
}

}  // namespace

std::string to_string(const ParseTree& t) {
    std::ostringstream os;
    print_tree(os, t, 0);
    return os.str();
}

Forest::Forest(const SlotTable& table, std::vector<BsrElement> elements)
    : table_(table), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (const BsrElement& e : elements_) {
        set_.insert(e);
        by_slot_i_[key(e.slot, e.i)].push_back(e);
        const Slot& s = table_.slot(e.slot);
        bool at_end = s.alt_kind == AltKind::epsilon ||
                      (s.alt_kind == AltKind::normal && s.after.kind == AtomKind::none);
        if (at_end) complete_[key(s.nt, e.i)].push_back(e);
    }
}

int Forest::match_right(const BsrElement& e) const {
    const Slot& s = table_.slot(e.slot);
    return s.before.is_lookahead() ? e.j : e.k;
}

std::vector<int> Forest::complete_matches(int nt, int i) const {
    std::vector<int> out;
    auto it = complete_.find(key(nt, i));
    if (it == complete_.end()) return out;
    for (const BsrElement& e : it->second) out.push_back(match_right(e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<BsrElement> Forest::predecessors(const BsrElement& e) const {
    const Slot& s = table_.slot(e.slot);
    std::vector<BsrElement> out;
    if (s.alt_kind != AltKind::normal || s.dot <= 1) return out;
    SlotId pred_slot = e.slot - 1;  // slots of an alternate are contiguous by dot
    assert(table_.slot(pred_slot).nt == s.nt && table_.slot(pred_slot).dot == s.dot - 1);
    auto it = by_slot_i_.find(key(pred_slot, e.i));
    if (it == by_slot_i_.end()) return out;
    for (const BsrElement& p : it->second)
        if (match_right(p) == e.j) out.push_back(p);
    return out;
}

std::vector<BsrElement> Forest::children_of(const BsrElement& e) const {
    const Slot& s = table_.slot(e.slot);
    std::vector<BsrElement> out;
    if (s.before.kind != AtomKind::call && !s.before.is_lookahead()) return out;
    int nt = s.before.sym;
    auto it = complete_.find(key(nt, e.j));
    if (it == complete_.end()) return out;
    for (const BsrElement& c : it->second)
        if (match_right(c) == e.k) out.push_back(c);
    return out;
}

std::vector<BsrElement> Forest::successors(const BsrElement& e) const {
    const Slot& s = table_.slot(e.slot);
    std::vector<BsrElement> out;
    if (s.alt_kind != AltKind::normal || s.after.kind == AtomKind::none) return out;
    auto it = by_slot_i_.find(key(s.next, e.i));
    if (it == by_slot_i_.end()) return out;
    int edge = match_right(e);
    for (const BsrElement& n : it->second)
        if (n.j == edge) out.push_back(n);
    return out;
}

std::vector<BsrElement> Forest::parents(const BsrElement& e) const {
    const Slot& s = table_.slot(e.slot);
    std::vector<BsrElement> out;
    bool complete = s.alt_kind == AltKind::epsilon ||
                    (s.alt_kind == AltKind::normal && s.after.kind == AtomKind::none);
    if (!complete) return out;
    int me = match_right(e);
    for (const BsrElement& p : elements_) {
        const Slot& ps = table_.slot(p.slot);
        if (ps.before.kind != AtomKind::call && !ps.before.is_lookahead()) continue;
        if (ps.before.sym != s.nt) continue;
        if (p.j == e.i && p.k == me) out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// tree extraction

struct Forest::Enumeration {
    const Forest& forest;
    int limit;  // stop growing result lists beyond this many variants

    // Subtrees for the atom before the dot of `e`.
    std::vector<ParseTree> atom_trees(const BsrElement& e) {
        const Slot& s = forest.table_.slot(e.slot);
        std::vector<ParseTree> out;
        switch (s.before.kind) {
            case AtomKind::token:
                out.push_back({ParseTree::Kind::token,
                               forest.table_.token_names[s.before.sym], 0, e.j, e.k, {}});
                break;
            case AtomKind::call: {
                for (ParseTree& t : trees_for(s.before.sym, e.j, e.k)) out.push_back(std::move(t));
                break;
            }
            case AtomKind::and_pred:
            case AtomKind::not_pred: {
                std::string text = (s.before.kind == AtomKind::and_pred ? "&" : "!") +
                                   forest.table_.nt(s.before.sym).name;
                out.push_back({ParseTree::Kind::lookahead, text, 0, e.j, e.j, {}});
                break;
            }
            case AtomKind::none:
                break;
        }
        return out;
    }

    // All child sequences covering the alternate prefix that ends at `e`.
    std::vector<std::vector<ParseTree>> prefixes(const BsrElement& e) {
        std::vector<std::vector<ParseTree>> out;
        std::vector<ParseTree> atoms = atom_trees(e);
        const Slot& s = forest.table_.slot(e.slot);
        if (s.dot <= 1) {
            for (ParseTree& a : atoms) {
                out.push_back({std::move(a)});
                if (static_cast<int>(out.size()) >= limit) break;
            }
            return out;
        }
        std::vector<BsrElement> preds = forest.predecessors(e);
        std::sort(preds.begin(), preds.end(),
                  [](const BsrElement& a, const BsrElement& b) { return a.j < b.j; });
        for (const BsrElement& p : preds) {
            for (std::vector<ParseTree>& head : prefixes(p)) {
                for (const ParseTree& a : atoms) {
                    std::vector<ParseTree> seq = head;
                    seq.push_back(a);
                    out.push_back(std::move(seq));
                    if (static_cast<int>(out.size()) >= limit) return out;
                }
            }
        }
        return out;
    }

    // Distinct trees for complete matches of `nt` over [i, k), ordered by
    // (alternate, pivots) and deduplicated across variants.
    std::vector<ParseTree> trees_for(int nt, int i, int k) {
        std::vector<ParseTree> out;
        std::unordered_set<std::string> seen;
        auto cit = forest.complete_.find(Forest::key(nt, i));
        if (cit == forest.complete_.end()) return out;
        std::vector<BsrElement> candidates;
        for (const BsrElement& e : cit->second)
            if (forest.match_right(e) == k) candidates.push_back(e);
        std::sort(candidates.begin(), candidates.end(),
                  [&](const BsrElement& a, const BsrElement& b) {
                      const Slot& sa = forest.table_.slot(a.slot);
                      const Slot& sb = forest.table_.slot(b.slot);
                      if (sa.alt != sb.alt) return sa.alt < sb.alt;
                      if (a.j != b.j) return a.j < b.j;
                      return a.slot < b.slot;
                  });
        for (const BsrElement& e : candidates) {
            const Slot& s = forest.table_.slot(e.slot);
            if (s.alt_kind == AltKind::epsilon) {
                ParseTree node{ParseTree::Kind::nonterminal, forest.table_.nt(nt).name, s.alt,
                               i,    k,    {}};
                if (seen.insert(tree_key(node)).second) out.push_back(std::move(node));
            } else {
                for (std::vector<ParseTree>& kids : prefixes(e)) {
                    ParseTree node{ParseTree::Kind::nonterminal, forest.table_.nt(nt).name,
                                   s.alt, i,    k,    std::move(kids)};
                    if (seen.insert(tree_key(node)).second) out.push_back(std::move(node));
                    if (static_cast<int>(out.size()) >= limit) break;
                }
            }
            if (static_cast<int>(out.size()) >= limit) break;
        }
        return out;
    }
};

Forest::Extraction Forest::extract_trees(int nt, int i, int k, int cap) const {
    if (cap <= 0) throw std::invalid_argument("extract_trees: cap must be positive");
    Enumeration en{*this, cap + 1};
    std::vector<ParseTree> trees = en.trees_for(nt, i, k);
    Extraction out;
    out.truncated = static_cast<int>(trees.size()) > cap;
    if (out.truncated) trees.resize(cap);
    out.trees = std::move(trees);
    return out;
}

}  // namespace pegll

// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pegll/engine.hpp"
#include "pegll/forest_tree.hpp"
#include "pegll/slot_table.hpp"

namespace pegll {

// Read-only view over a completed parse's BSR set. The set holds debris from
// abandoned alternates; extraction starts from dot-at-end elements and walks
// predecessor chains, so debris stays unreachable.
class Forest {
public:
    Forest(const SlotTable& table, std::vector<BsrElement> elements);

    // The right edge of the match an element witnesses. Lookahead atoms
    // consume nothing, so elements whose before-dot atom is a lookahead
    // carry the match edge in their pivot; `k` then records the lookahead
    // body's extent.
    int match_right(const BsrElement& e) const;

    // Every extent k with a complete match of `nt` spanning [i, k).
    std::vector<int> complete_matches(int nt, int i) const;

    // (X ::= a . tb, i, l, j) for an element (X ::= at . b, i, j, k).
    std::vector<BsrElement> predecessors(const BsrElement& e) const;
    // (A ::= d ., j, m, k) for an element (X ::= aA . b, i, j, k).
    std::vector<BsrElement> children_of(const BsrElement& e) const;
    // duals, defined analogously
    std::vector<BsrElement> successors(const BsrElement& e) const;
    std::vector<BsrElement> parents(const BsrElement& e) const;

    struct Extraction {
        std::vector<ParseTree> trees;
        bool truncated = false;
    };
    // Enumerates distinct parse trees for a complete match, deterministically
    // ordered (alternate index, then pivots), truncated at `cap` (which must
    // be positive).
    Extraction extract_trees(int nt, int i, int k, int cap) const;

    bool contains(const BsrElement& e) const { return set_.count(e) > 0; }
    const std::vector<BsrElement>& elements() const { return elements_; }
    const SlotTable& table() const { return table_; }

private:
    struct Enumeration;

    static uint64_t key(int a, int b) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
               static_cast<uint32_t>(b);
    }

    const SlotTable& table_;
    std::vector<BsrElement> elements_;  // canonical order
    std::unordered_set<BsrElement, BsrHash> set_;
    std::unordered_map<uint64_t, std::vector<BsrElement>> by_slot_i_;   // (slot, i)
    std::unordered_map<uint64_t, std::vector<BsrElement>> complete_;    // (nt, i), dot-at-end
};

}  // namespace pegll

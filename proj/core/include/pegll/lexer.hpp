// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <string_view>
#include <unordered_map>
#include <vector>

#include "pegll/grammar.hpp"
#include "pegll/regex.hpp"

namespace pegll {

// All tokens matching at one (skip-adjusted) position, each with its greatest
// right extent. Extents are absolute byte offsets, exclusive, and never cover
// trailing skips. The reserved token "$" (id 0) appears iff base == |input|.
struct TokenMap {
    int base = 0;  // position after consuming leading skips
    std::vector<std::pair<int, int>> entries;  // (token id, extent), sorted by id
    bool at_end = false;

    int extent_of(int token) const {
        for (auto [t, r] : entries)
            if (t == token) return r;
        return -1;
    }
};

// Compiled token automata, shared across parse sessions.
struct LexTable {
    std::vector<TokenDef> defs;     // id-aligned; [0] is "$"
    std::vector<rx::Nfa> automata;  // id-aligned; unused for "$"
    std::vector<int> skip_ids;

    int token_count() const { return static_cast<int>(defs.size()); }
    const std::string& name(int id) const { return defs[id].name; }
};

// Compiles every definition; rejects invalid syntax and patterns that accept
// the empty string.
LexTable compile_tokens(const std::vector<TokenDef>& defs, Diagnostics& diags);

// One input's worth of memoized tokens(i) queries.
class LexSession {
public:
    LexSession(const LexTable& table, std::string_view input)
        : table_(table), input_(input) {}

    // The tokens(i) map; memoized, so repeated calls return the same object.
    const TokenMap& tokens(int i);

    int size() const { return static_cast<int>(input_.size()); }
    std::string_view input() const { return input_; }
    const LexTable& table() const { return table_; }

private:
    TokenMap compute(int i) const;

    const LexTable& table_;
    std::string_view input_;
    std::unordered_map<int, TokenMap> memo_;
};

}  // namespace pegll

// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <string>
#include <vector>

namespace pegll {

// Extracted parse tree. Nonterminal nodes carry their 1-based alternate
// index; token leaves carry the token extents; lookahead markers are
// zero-width (i == k) and childless.
struct ParseTree {
    enum class Kind { nonterminal, token, lookahead };
    Kind kind = Kind::token;
    std::string name;
    int alt = 0;
    int i = 0;
    int k = 0;
    std::vector<ParseTree> children;

    friend bool operator==(const ParseTree& a, const ParseTree& b) {
        return a.kind == b.kind && a.name == b.name && a.alt == b.alt && a.i == b.i &&
               a.k == b.k && a.children == b.children;
    }
};

// Indented multi-line rendering, stable across runs.
std::string to_string(const ParseTree& t);

}  // namespace pegll

// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pegll/diagnostics.hpp"

namespace pegll::rx {

// Supported syntax: literal characters, escapes (\n \t \r and \<special>),
// character classes [a-z0-9] / [^...], '.', grouping, '|', '*', '+', '?'.
// No backreferences, no lazy quantifiers.

struct CharClass {
    bool negate = false;
    std::vector<std::pair<uint8_t, uint8_t>> ranges;  // inclusive

    bool matches(uint8_t c) const {
        bool hit = false;
        for (auto [lo, hi] : ranges)
            if (c >= lo && c <= hi) {
                hit = true;
                break;
            }
        return negate ? !hit : hit;
    }
};

enum class ReKind { chr, any, cls, seq, alt, star, plus, opt, empty };

struct ReNode {
    ReKind kind = ReKind::empty;
    uint8_t ch = 0;
    CharClass cls;
    std::vector<ReNode> kids;
};

// Parses a pattern; reports syntax errors ("quantifier without operand" for
// a**, etc.) into `diags` and returns nullopt on failure.
std::optional<ReNode> parse_regex(std::string_view pattern, Diagnostics& diags);

// True when the pattern can match the empty string.
bool matches_empty(const ReNode& re);

// Thompson-construction NFA.
struct Nfa {
    struct Edge {
        CharClass on;
        int to;
    };
    struct State {
        std::vector<Edge> edges;
        std::vector<int> eps;
    };
    std::vector<State> states;
    int start = 0;
    int accept = 0;
};

Nfa build_nfa(const ReNode& re);
Nfa literal_nfa(std::string_view text);

// Longest match starting exactly at `pos`; returns the end index (exclusive),
// or -1 when nothing matches.
int longest_match(const Nfa& nfa, std::string_view input, int pos);

}  // namespace pegll::rx

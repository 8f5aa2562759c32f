// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pegll/diagnostics.hpp"
#include "pegll/expr.hpp"

namespace pegll {

// A token definition. Token ids are indices into Grammar::tokens; index 0 is
// always the reserved end-of-input token "$".
struct TokenDef {
    std::string name;
    std::string pattern;     // regex source, or the raw text for literal tokens
    bool is_skip = false;
    bool is_literal = false; // defined by an inline "..." in a rule; exact match
    SourceLoc loc;
};

struct Rule {
    std::string name;
    Expr body;
    SourceLoc loc;
};

struct Grammar {
    std::vector<Rule> rules;  // definition order
    std::vector<TokenDef> tokens;
    std::string start;

    static constexpr int eof_token = 0;  // id of "$"

    Grammar() {
        tokens.push_back({"$", "", false, false, {}});
        token_index_["$"] = 0;
    }

    int rule_index(std::string_view name) const {
        auto it = rule_index_.find(std::string(name));
        return it == rule_index_.end() ? -1 : it->second;
    }
    int token_id(std::string_view name) const {
        auto it = token_index_.find(std::string(name));
        return it == token_index_.end() ? -1 : it->second;
    }
    const Rule* find_rule(std::string_view name) const {
        int i = rule_index(name);
        return i < 0 ? nullptr : &rules[i];
    }

    // Appends a rule / token def, keeping the name indexes consistent.
    // Returns false if the name is already taken in the same namespace.
    bool add_rule(Rule r);
    int add_token(TokenDef t);  // returns id, or -1 on duplicate name
    int start_index() const { return rule_index(start); }

private:
    std::unordered_map<std::string, int> rule_index_;
    std::unordered_map<std::string, int> token_index_;
};

struct GrammarResult {
    std::optional<Grammar> grammar;
    Diagnostics diagnostics;
    bool ok() const { return grammar.has_value() && diagnostics.empty(); }
};

// Parses the grammar DSL:
//
//   // tokens and skip tokens
//   num = /[0-9]+/ ;
//   skip ws = / +/ ;
//   start S ;
//   S : "a" S / "b" ;          // ordered rule
//   T : A | B ;                // unordered rule
//
// Alternates are sequences of atoms; an atom is a "literal" (auto-defining an
// exact-match token), a token or rule name, a parenthesized expression, `eps`,
// or `$` (end of input), optionally prefixed by `&`/`!` and suffixed by
// `?`/`*`/`+`. `/` and `|` may not be mixed at one level.
GrammarResult parse_grammar(std::string_view text);

// Renders a grammar back to DSL-ish text (token defs, start directive, rules).
std::string to_string(const Grammar& g);

}  // namespace pegll

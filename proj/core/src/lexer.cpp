// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/lexer.hpp"

#include <cassert>

namespace pegll {

LexTable compile_tokens(const std::vector<TokenDef>& defs, Diagnostics& diags) {
    LexTable table;
    table.defs = defs;
    table.automata.resize(defs.size());
    for (size_t id = 0; id < defs.size(); ++id) {
        const TokenDef& def = defs[id];
        if (def.name == "$" && id == 0) continue;
        if (def.is_literal) {
            if (def.pattern.empty()) {
                diags.push_back({def.loc, "token " + def.name + ": pattern accepts empty string"});
                continue;
            }
            table.automata[id] = rx::literal_nfa(def.pattern);
            continue;
        }
        Diagnostics local;
        auto re = rx::parse_regex(def.pattern, local);
        for (Diagnostic& d : local)
            diags.push_back({def.loc, "token " + def.name + ": " + d.message});
        if (!re) continue;
        if (rx::matches_empty(*re)) {
            diags.push_back({def.loc, "token " + def.name + ": pattern accepts empty string"});
            continue;
        }
        table.automata[id] = rx::build_nfa(*re);
    }
    for (size_t id = 0; id < defs.size(); ++id)
        if (defs[id].is_skip) table.skip_ids.push_back(static_cast<int>(id));
    return table;
}

const TokenMap& LexSession::tokens(int i) {
    assert(i >= 0 && i <= size());
    auto it = memo_.find(i);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(i, compute(i)).first->second;
}

TokenMap LexSession::compute(int i) const {
    TokenMap map;
    // consume maximal skip matches to a fixpoint
    int base = i;
    for (;;) {
        int best = base;
        for (int id : table_.skip_ids) {
            int r = rx::longest_match(table_.automata[id], input_, base);
            if (r > best) best = r;
        }
        if (best == base) break;
        base = best;
    }
    map.base = base;
    for (int id = 1; id < table_.token_count(); ++id) {
        if (table_.defs[id].is_skip) continue;
        int r = rx::longest_match(table_.automata[id], input_, base);
        if (r > base) map.entries.emplace_back(id, r);
    }
    if (base == size()) {
        map.at_end = true;
        map.entries.insert(map.entries.begin(), {Grammar::eof_token, base});
    }
    return map;
}

}  // namespace pegll

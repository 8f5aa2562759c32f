// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pegll/analysis.hpp"
#include "pegll/grammar.hpp"
#include "pegll/token_set.hpp"

namespace pegll {

using SlotId = int32_t;

enum class AtomKind : uint8_t { none, token, call, and_pred, not_pred };

struct Atom {
    AtomKind kind = AtomKind::none;
    int sym = -1;  // token id or nonterminal index

    bool is_lookahead() const { return kind == AtomKind::and_pred || kind == AtomKind::not_pred; }
};

enum class Variant : uint8_t { plain, pass, fail };

enum class AltKind : uint8_t {
    normal,   // sequence of atoms
    epsilon,  // X : eps — single slot, matches zero-width
    bottom,   // synthesized failure alternate; reaching it fails the nonterminal
    abandon,  // sentinel: reaching it ends the descriptor with no effect
};

// One grammar slot X ::= alpha . beta within an alternate variant.
struct Slot {
    SlotId id = -1;
    int nt = -1;
    int alt = 0;  // 1-based alternate index; bottom uses p+1
    Variant variant = Variant::plain;
    int dot = 0;
    AltKind alt_kind = AltKind::normal;
    Atom before;           // atom left of the dot (none at dot 0)
    Atom after;            // atom right of the dot (none at end of alternate)
    SlotId next = -1;      // slot after consuming `after`
    SlotId fail = -1;      // failure continuation; -1 = abandon
    SlotId pass_cont = -1; // unordered fall-through target on alternate success
    bool suffix_nullable = true;
    TokenSet suffix_first;
    std::string label;      // "X : \"a\" . S (alt1,fail)" — variant-qualified
    std::string bsr_label;  // same without the variant marker
};

struct NtInfo {
    std::string name;
    SlotId entry = -1;   // initial slot of the first alternate
    SlotId bottom = -1;  // the synthesized failure slot
    int alternates = 0;
    bool nullable = false;
    TokenSet first;
    std::vector<SlotId> end_slots;  // dot-at-end slots of every variant, plus epsilon slots
};

struct SlotTable {
    std::vector<Slot> slots;
    std::vector<NtInfo> nts;            // rule order
    std::vector<std::string> token_names;  // id-aligned with the grammar
    int start_nt = -1;
    SlotId abandon_slot = -1;

    const Slot& slot(SlotId id) const { return slots[id]; }
    const NtInfo& nt(int i) const { return nts[i]; }
    std::string dump() const;  // stable, line-per-slot listing
};

// Compiles a desugared, left-recursion-free grammar. Ordered alternates chain
// failure to the next alternate's initial slot and bottom out at the
// synthesized failure alternate. Unordered alternates are emitted as a
// fail-variant chain (entry) plus pass variants for alternates 2..p; a
// fail-variant success falls through to the next pass variant, and the last
// pass variant's failure abandons the descriptor.
SlotTable compile_slots(const Grammar& g);
SlotTable compile_slots(const Grammar& g, const GrammarAnalysis& a);

}  // namespace pegll

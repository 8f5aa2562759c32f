// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/slot_table.hpp"

#include <cassert>
#include <sstream>

namespace pegll {

namespace {

struct AltSpec {
    std::vector<Atom> atoms;  // empty = epsilon alternate
    std::vector<std::string> atom_text;
};

std::string atom_to_text(const Grammar& g, const Expr& e) {
    switch (e.kind) {
        case ExprKind::literal: return e.name;
        case ExprKind::nonterminal: return e.name;
        case ExprKind::and_pred: return "&" + e.children[0].name;
        case ExprKind::not_pred: return "!" + e.children[0].name;
        default: return to_string(e);
    }
}

AltSpec lower_alternate(const Grammar& g, const Expr& alt) {
    AltSpec spec;
    if (alt.kind == ExprKind::empty) return spec;
    assert(alt.kind == ExprKind::seq);
    for (const Expr& e : alt.children) {
        Atom a;
        switch (e.kind) {
            case ExprKind::literal:
                a = {AtomKind::token, g.token_id(e.name)};
                break;
            case ExprKind::nonterminal:
                a = {AtomKind::call, g.rule_index(e.name)};
                break;
            case ExprKind::and_pred:
                a = {AtomKind::and_pred, g.rule_index(e.children[0].name)};
                break;
            case ExprKind::not_pred:
                a = {AtomKind::not_pred, g.rule_index(e.children[0].name)};
                break;
            case ExprKind::empty:
                continue;  // tolerated; desugaring normally strips these
            default:
                assert(false && "grammar not desugared");
                continue;
        }
        assert(a.sym >= 0);
        spec.atoms.push_back(a);
        spec.atom_text.push_back(atom_to_text(g, e));
    }
    return spec;
}

class Builder {
public:
    Builder(const Grammar& g, const GrammarAnalysis& a) : g_(g), a_(a) {
        table_.token_names.reserve(g.tokens.size());
        for (const TokenDef& t : g.tokens) table_.token_names.push_back(t.name);
        table_.start_nt = g.start_index();
    }

    SlotTable run() {
        table_.nts.resize(g_.rules.size());
        for (size_t i = 0; i < g_.rules.size(); ++i) build_nt(static_cast<int>(i));
        // the shared abandon sentinel
        Slot ab;
        ab.id = next_id();
        ab.nt = -1;
        ab.alt_kind = AltKind::abandon;
        ab.suffix_nullable = false;
        ab.label = "<abandon>";
        ab.bsr_label = ab.label;
        table_.abandon_slot = ab.id;
        table_.slots.push_back(std::move(ab));
        return std::move(table_);
    }

private:
    SlotId next_id() const { return static_cast<SlotId>(table_.slots.size()); }

    void build_nt(int nt) {
        const Rule& rule = g_.rules[nt];
        NtInfo& info = table_.nts[nt];
        info.name = rule.name;
        info.nullable = a_.nullable[nt];
        info.first = a_.first[nt];

        bool unordered = rule.body.kind == ExprKind::unordered;
        std::vector<AltSpec> alts;
        for (const Expr& alt : rule.body.children) alts.push_back(lower_alternate(g_, alt));
        int p = static_cast<int>(alts.size());
        info.alternates = p;
        assert(p >= 1);

        // allocate initial slot ids per chain so failure/fall-through wiring can
        // point forward before those slots exist
        std::vector<SlotId> fail_entry(p), pass_entry(p, -1);
        SlotId cursor = next_id();
        auto alt_len = [&](int i) {
            return alts[i].atoms.empty() ? 1 : static_cast<int>(alts[i].atoms.size()) + 1;
        };
        for (int i = 0; i < p; ++i) {
            fail_entry[i] = cursor;
            cursor += alt_len(i);
        }
        if (unordered) {
            for (int i = 1; i < p; ++i) {
                pass_entry[i] = cursor;
                cursor += alt_len(i);
            }
        }
        SlotId bottom_id = cursor;

        info.entry = fail_entry[0];
        info.bottom = bottom_id;

        // entry chain: ordered rules use plain variants; unordered use fail variants
        for (int i = 0; i < p; ++i) {
            Variant v = unordered ? Variant::fail : Variant::plain;
            SlotId on_fail = (i + 1 < p) ? fail_entry[i + 1] : bottom_id;
            SlotId fall = (unordered && i + 1 < p) ? pass_entry[i + 1] : -1;
            emit_alternate(nt, i + 1, v, alts[i], on_fail, fall);
        }
        if (unordered) {
            for (int i = 1; i < p; ++i) {
                SlotId on_fail = (i + 1 < p) ? pass_entry[i + 1] : -1;  // -1 = abandon
                SlotId fall = (i + 1 < p) ? pass_entry[i + 1] : -1;
                emit_alternate(nt, i + 1, Variant::pass, alts[i], on_fail, fall);
            }
        }

        // bottom: X ::= . FAIL
        Slot b;
        b.id = next_id();
        assert(b.id == bottom_id);
        b.nt = nt;
        b.alt = p + 1;
        b.variant = unordered ? Variant::fail : Variant::plain;
        b.alt_kind = AltKind::bottom;
        b.suffix_nullable = false;
        b.label = rule.name + " : . FAIL";
        b.bsr_label = b.label;
        table_.slots.push_back(std::move(b));
    }

    void emit_alternate(int nt, int alt_no, Variant v, const AltSpec& spec, SlotId on_fail,
                        SlotId fall_through) {
        NtInfo& info = table_.nts[nt];
        if (spec.atoms.empty()) {
            Slot s;
            s.id = next_id();
            s.nt = nt;
            s.alt = alt_no;
            s.variant = v;
            s.alt_kind = AltKind::epsilon;
            s.fail = on_fail;  // wired for uniformity; an epsilon alternate cannot fail
            s.pass_cont = fall_through;
            s.suffix_nullable = true;
            make_labels(s, spec, 0);
            info.end_slots.push_back(s.id);
            table_.slots.push_back(std::move(s));
            return;
        }
        int d = static_cast<int>(spec.atoms.size());
        SlotId first_id = next_id();
        for (int dot = 0; dot <= d; ++dot) {
            Slot s;
            s.id = next_id();
            s.nt = nt;
            s.alt = alt_no;
            s.variant = v;
            s.dot = dot;
            s.alt_kind = AltKind::normal;
            if (dot > 0) s.before = spec.atoms[dot - 1];
            if (dot < d) {
                s.after = spec.atoms[dot];
                s.next = s.id + 1;
            }
            s.fail = on_fail;
            if (dot == d) {
                s.pass_cont = fall_through;
                info.end_slots.push_back(s.id);
            }
            compute_suffix(s, spec, dot);
            make_labels(s, spec, dot);
            table_.slots.push_back(std::move(s));
        }
        (void)first_id;
    }

    void compute_suffix(Slot& s, const AltSpec& spec, int dot) {
        s.suffix_nullable = true;
        for (size_t i = dot; i < spec.atoms.size(); ++i) {
            const Atom& a = spec.atoms[i];
            switch (a.kind) {
                case AtomKind::token:
                    s.suffix_first.insert(a.sym);
                    s.suffix_nullable = false;
                    return;
                case AtomKind::call:
                    s.suffix_first.merge(a_.first[a.sym]);
                    if (!a_.nullable[a.sym]) {
                        s.suffix_nullable = false;
                        return;
                    }
                    break;
                case AtomKind::and_pred:
                case AtomKind::not_pred:
                    break;  // transparent
                case AtomKind::none:
                    break;
            }
        }
    }

    void make_labels(Slot& s, const AltSpec& spec, int dot) {
        std::ostringstream os;
        os << table_.nts[s.nt].name << " :";
        if (s.alt_kind == AltKind::epsilon) {
            os << " eps .";
        } else {
            for (int i = 0; i < static_cast<int>(spec.atoms.size()); ++i) {
                if (i == dot) os << " .";
                os << ' ' << spec.atom_text[i];
            }
            if (dot == static_cast<int>(spec.atoms.size())) os << " .";
        }
        os << " (alt" << s.alt;
        std::string base = os.str() + ")";
        s.bsr_label = base;
        if (s.variant == Variant::pass)
            s.label = os.str() + ",pass)";
        else if (s.variant == Variant::fail)
            s.label = os.str() + ",fail)";
        else
            s.label = base;
    }

    const Grammar& g_;
    const GrammarAnalysis& a_;
    SlotTable table_;
};

}  // namespace

SlotTable compile_slots(const Grammar& g, const GrammarAnalysis& a) {
    return Builder(g, a).run();
}

SlotTable compile_slots(const Grammar& g) { return compile_slots(g, analyze(g)); }

std::string SlotTable::dump() const {
    std::ostringstream os;
    for (const Slot& s : slots) {
        os << s.id << ": " << s.label;
        if (s.alt_kind == AltKind::abandon) {
            os << "\n";
            continue;
        }
        if (s.next >= 0) os << "  next=" << s.next;
        if (s.alt_kind != AltKind::bottom) {
            os << "  fail=";
            if (s.fail >= 0)
                os << s.fail;
            else
                os << "abandon";
        }
        if (s.pass_cont >= 0) os << "  cont=" << s.pass_cont;
        os << "  nullable=" << (s.suffix_nullable ? "yes" : "no") << "  first={";
        bool comma = false;
        for (int t : s.suffix_first.values()) {
            if (comma) os << ", ";
            os << token_names[t];
            comma = true;
        }
        os << "}\n";
    }
    return os.str();
}

}  // namespace pegll

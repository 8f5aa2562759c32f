// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/desugar.hpp"

#include <cassert>
#include <deque>

namespace pegll {

namespace {

class Desugarer {
public:
    explicit Desugarer(const Grammar& in) : in_(in), out_(in) {}

    Grammar run() {
        for (size_t i = 0; i < in_.rules.size(); ++i)
            work_.push_back({static_cast<int>(i), in_.rules[i].name, in_.rules[i].body});
        while (!work_.empty()) {
            Item item = std::move(work_.front());
            work_.pop_front();
            owner_ = root_owner(item.owner);
            out_.rules[item.index].body = canonical_body(item.body);
        }
        return std::move(out_);
    }

private:
    struct Item {
        int index;          // rule slot in out_
        std::string owner;  // rule whose counter names fresh nonterminals
        Expr body;
    };

    // Fresh rules chain their ordinals back to the user rule they came from.
    std::string root_owner(const std::string& name) {
        auto cut = name.find('%');
        return cut == std::string::npos ? name : name.substr(0, cut);
    }

    std::string fresh_name() {
        int n = ++counter_[owner_];
        return owner_ + "%" + std::to_string(n);
    }

    int alloc_rule(SourceLoc loc) {
        std::string name = fresh_name();
        int index = static_cast<int>(out_.rules.size());
        bool ok = out_.add_rule({name, Expr::eps(), loc});
        assert(ok);
        (void)ok;
        return index;
    }

    int fresh_rule(Expr body, SourceLoc loc) {
        int index = alloc_rule(loc);
        work_.push_back({index, out_.rules[index].name, std::move(body)});
        return index;
    }

    Expr nt_ref(int rule_index, SourceLoc loc) { return Expr::nt(out_.rules[rule_index].name, loc); }

    static Expr unwrap_group(Expr e) {
        while (e.kind == ExprKind::group) e = std::move(e.children[0]);
        return e;
    }

    // Rewrites one rule body into the canonical choice-of-alternates form.
    Expr canonical_body(Expr body) {
        ExprKind kind = ExprKind::ordered;
        std::vector<Expr> alts;
        if (body.kind == ExprKind::ordered || body.kind == ExprKind::unordered) {
            kind = body.kind;
            alts = std::move(body.children);
        } else {
            alts.push_back(std::move(body));
        }
        std::vector<Expr> out_alts;
        out_alts.reserve(alts.size());
        for (Expr& alt : alts) out_alts.push_back(alternate(std::move(alt)));
        Expr out = Expr::make(kind, std::move(out_alts), body.loc);
        return out;
    }

    // An alternate becomes a non-empty Seq of atoms, or eps.
    Expr alternate(Expr alt) {
        SourceLoc loc = alt.loc;
        std::vector<Expr> parts;
        flatten_seq(std::move(alt), parts);
        std::vector<Expr> atoms;
        for (Expr& p : parts) {
            Expr a = atom(std::move(p));
            if (a.kind == ExprKind::empty) continue;  // eps contributes nothing mid-sequence
            atoms.push_back(std::move(a));
        }
        if (atoms.empty()) return Expr::eps(loc);
        return Expr::make(ExprKind::seq, std::move(atoms), loc);
    }

    static void flatten_seq(Expr e, std::vector<Expr>& out) {
        if (e.kind == ExprKind::seq) {
            for (Expr& c : e.children) flatten_seq(std::move(c), out);
        } else {
            out.push_back(std::move(e));
        }
    }

    // Rewrites one sequence element to an atom: literal, nonterminal, eps,
    // or lookahead over a nonterminal.
    Expr atom(Expr e) {
        switch (e.kind) {
            case ExprKind::literal:
            case ExprKind::nonterminal:
            case ExprKind::empty:
            case ExprKind::fail: return e;
            case ExprKind::group: {
                SourceLoc loc = e.loc;
                return nt_ref(fresh_rule(unwrap_group(std::move(e)), loc), loc);
            }
            case ExprKind::opt: {
                SourceLoc loc = e.loc;
                Expr body = unwrap_group(std::move(e.children[0]));
                Expr rule = Expr::make(ExprKind::ordered, {std::move(body), Expr::eps(loc)}, loc);
                return nt_ref(fresh_rule(std::move(rule), loc), loc);
            }
            case ExprKind::star: {
                SourceLoc loc = e.loc;
                Expr body = unwrap_group(std::move(e.children[0]));
                return nt_ref(star_rule(std::move(body), loc), loc);
            }
            case ExprKind::plus: {
                // P : body R ;  R : body R / eps
                SourceLoc loc = e.loc;
                Expr body = unwrap_group(std::move(e.children[0]));
                Expr body_copy = body;
                int plus_index = alloc_rule(loc);
                int star_index = star_rule(std::move(body_copy), loc);
                Expr rule = Expr::make(
                    ExprKind::seq, {std::move(body), nt_ref(star_index, loc)}, loc);
                work_.push_back({plus_index, out_.rules[plus_index].name, std::move(rule)});
                return nt_ref(plus_index, loc);
            }
            case ExprKind::and_pred:
            case ExprKind::not_pred: {
                SourceLoc loc = e.loc;
                Expr body = unwrap_group(std::move(e.children[0]));
                if (body.kind != ExprKind::nonterminal)
                    body = nt_ref(fresh_rule(std::move(body), loc), loc);
                return Expr::make(e.kind, {std::move(body)}, loc);
            }
            case ExprKind::seq:
            case ExprKind::ordered:
            case ExprKind::unordered:
                // a bare choice as a sequence element (only reachable through
                // hand-built ASTs; the DSL requires parentheses)
                return nt_ref(fresh_rule(std::move(e), e.loc), e.loc);
        }
        return e;
    }

    // R : body R / eps
    int star_rule(Expr body, SourceLoc loc) {
        int index = alloc_rule(loc);
        Expr rec = nt_ref(index, loc);
        Expr rule = Expr::make(
            ExprKind::ordered,
            {Expr::make(ExprKind::seq, {std::move(body), std::move(rec)}, loc), Expr::eps(loc)},
            loc);
        work_.push_back({index, out_.rules[index].name, std::move(rule)});
        return index;
    }

    const Grammar& in_;
    Grammar out_;
    std::deque<Item> work_;
    std::string owner_;
    std::unordered_map<std::string, int> counter_;
};

bool desugared_atom(const Expr& e) {
    switch (e.kind) {
        case ExprKind::literal:
        case ExprKind::nonterminal: return true;
        case ExprKind::and_pred:
        case ExprKind::not_pred:
            return e.children.size() == 1 && e.children[0].kind == ExprKind::nonterminal;
        default: return false;
    }
}

}  // namespace

Grammar desugar(const Grammar& g) { return Desugarer(g).run(); }

bool is_desugared(const Grammar& g) {
    for (const Rule& r : g.rules) {
        const Expr& body = r.body;
        if (body.kind != ExprKind::ordered && body.kind != ExprKind::unordered) return false;
        if (body.children.empty()) return false;
        for (const Expr& alt : body.children) {
            if (alt.kind == ExprKind::empty || alt.kind == ExprKind::fail) continue;
            if (alt.kind != ExprKind::seq || alt.children.empty()) return false;
            for (const Expr& a : alt.children)
                if (!desugared_atom(a)) return false;
        }
    }
    return true;
}

}  // namespace pegll

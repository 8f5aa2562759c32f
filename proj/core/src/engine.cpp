// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/engine.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace pegll {

Engine::Engine(const SlotTable& table, const LexTable& lex, std::string_view input,
               const ParseOptions& opts)
    : table_(table), lex_(lex, input), trace_(opts.trace) {}

EdgePolarity Engine::polarity_of(SlotId slot) const {
    // failure continuations are always alternate-initial (dot 0), the bottom
    // slot, or abandon; progress continuations sit after a consumed atom
    const Slot& s = table_.slot(slot);
    if (s.alt_kind == AltKind::abandon || s.alt_kind == AltKind::bottom) return EdgePolarity::failover;
    return s.dot >= 1 ? EdgePolarity::progress : EdgePolarity::failover;
}

void Engine::add_desc(SlotId slot, int i, int h) {
    Descriptor d{slot, i, h};
    auto [it, fresh] = seen_.try_emplace(d, false);
    if (!fresh) {
        stats_.descriptors_deduped++;
        return;
    }
    stats_.descriptors_enqueued++;
    queue_.push_back(d);
}

void Engine::add_nt(int nt, int i) { add_desc(table_.nt(nt).entry, i, i); }

void Engine::add_match(SlotId slot, int i, int j, int h) {
    if (slot == table_.abandon_slot) return;
    add_bsr({slot, i, j, h});
    if (table_.slot(slot).before.is_lookahead())
        add_desc(slot, i, j);  // lookaheads consume no input
    else
        add_desc(slot, i, h);
}

void Engine::add_fail(SlotId slot, int i, int j) {
    if (slot == table_.abandon_slot) return;
    if (table_.slot(slot).before.is_lookahead())
        add_desc(slot, i, j);
    else
        add_desc(slot, i, i);  // the alternate restarts at its invocation point
}

bool Engine::add_edge(int nt, int j, CrfNode& node, const CrfEdge& edge) {
    for (const CrfEdge& e : node.edges)
        if (e.slot == edge.slot && e.i == edge.i && e.label == edge.label) {
            assert(e.polarity == edge.polarity);
            return false;
        }
    node.edges.push_back(edge);
    stats_.crf_edges++;
    if (trace_)
        *trace_ << "edge (" << table_.nt(nt).name << ", " << j << ") -"
                << (edge.label == EdgeLabel::match ? "match" : "fail") << "-> ("
                << table_.slot(edge.slot).label << ", " << edge.i << ")\n";
    return true;
}

void Engine::call(SlotId match_slot, SlotId fail_slot, int nt, int i, int j) {
    auto [it, created] = crf_.try_emplace(key(nt, j));
    CrfNode& v = it->second;
    if (created) {
        stats_.crf_nodes++;
        if (trace_) *trace_ << "node (" << table_.nt(nt).name << ", " << j << ")\n";
    }
    CrfEdge match_edge{match_slot, i, EdgeLabel::match, polarity_of(match_slot)};
    CrfEdge fail_edge{fail_slot, i, EdgeLabel::fail, polarity_of(fail_slot)};
    bool new_match = add_edge(nt, j, v, match_edge);
    bool new_fail = add_edge(nt, j, v, fail_edge);
    if (created) add_nt(nt, j);
    // replay previous results across newly added edges
    if (new_match || new_fail) {
        auto pit = popped_.find(key(nt, j));
        if (pit != popped_.end()) {
            if (new_match)
                for (int h : pit->second.extents) dispatch(match_edge, j, h);
            if (new_fail && pit->second.failed) dispatch(fail_edge, j, fail_result);
        }
    }
}

void Engine::rtn(int nt, int j, int h) {
    PoppedResults& p = popped_[key(nt, j)];
    if (h == fail_result) {
        if (p.failed) return;
        p.failed = true;
    } else {
        auto it = std::lower_bound(p.extents.begin(), p.extents.end(), h);
        if (it != p.extents.end() && *it == h) return;
        p.extents.insert(it, h);
    }
    stats_.popped_entries++;
    if (trace_) {
        *trace_ << "pop (" << table_.nt(nt).name << ", " << j << ", ";
        if (h == fail_result)
            *trace_ << "fail)\n";
        else
            *trace_ << h << ")\n";
    }
    auto cit = crf_.find(key(nt, j));
    if (cit == crf_.end()) return;  // start symbol: no registered callers
    EdgeLabel wanted = h == fail_result ? EdgeLabel::fail : EdgeLabel::match;
    // edges cannot be added while dispatching, but keep index-based iteration
    // as a guard against iterator invalidation
    for (size_t e = 0; e < cit->second.edges.size(); ++e) {
        CrfEdge edge = cit->second.edges[e];
        if (edge.label == wanted) dispatch(edge, j, h);
    }
}

void Engine::dispatch(const CrfEdge& edge, int j, int h) {
    if (h != fail_result) {
        if (edge.polarity == EdgePolarity::progress) {
            add_match(edge.slot, edge.i, j, h);
        } else {
            // negative lookahead body matched: the caller's alternate fails
            add_fail(edge.slot, edge.i, j);
        }
    } else {
        if (edge.polarity == EdgePolarity::progress) {
            // negative lookahead body failed: the lookahead matches zero-width
            add_bsr({edge.slot, edge.i, j, j});
            add_fail(edge.slot, edge.i, j);
        } else {
            add_fail(edge.slot, edge.i, j);
        }
    }
}

int Engine::test_select(SlotId slot, const TokenMap& t, int ci) {
    stats_.test_select_calls++;
    const Slot& s = table_.slot(slot);
    int b = -1;
    if (s.suffix_nullable) b = ci;
    for (auto [tok, r] : t.entries)
        if (r > b && s.suffix_first.contains(tok)) b = r;
    return b;
}

void Engine::note_failure(int ci, const Slot& s) {
    int pos = lex_.tokens(ci).base;
    if (pos < failure_.pos) return;
    if (pos > failure_.pos) {
        failure_.pos = pos;
        failure_.expected = TokenSet();
    }
    failure_.expected.merge(s.suffix_first);
}

void Engine::trace_desc(const Descriptor& d) {
    if (trace_)
        *trace_ << "desc (" << table_.slot(d.slot).label << ", " << d.cu << ", " << d.ci << ")\n";
}

void Engine::add_bsr(const BsrElement& e) {
    if (bsr_.insert(e).second && trace_)
        *trace_ << "bsr (" << table_.slot(e.slot).bsr_label << ", " << e.i << ", " << e.j << ", "
                << e.k << ")\n";
}

Descriptor Engine::pop_descriptor() {
    Descriptor d = queue_.front();
    queue_.pop_front();
    return d;
}

void Engine::process(Descriptor d) {
    stats_.descriptors_processed++;
    auto it = seen_.find(d);
    if (it != seen_.end()) {
        if (it->second) stats_.processed_twice++;
        it->second = true;
    }
    trace_desc(d);

    SlotId L = d.slot;
    const int cu = d.cu;
    int ci = d.ci;
    for (;;) {
        const Slot& s = table_.slot(L);
        switch (s.alt_kind) {
            case AltKind::abandon:
                return;
            case AltKind::bottom:
                rtn(s.nt, cu, fail_result);
                return;
            case AltKind::epsilon:
                add_bsr({L, ci, ci, ci});
                rtn(s.nt, cu, ci);
                if (s.pass_cont >= 0) {
                    L = s.pass_cont;
                    ci = cu;
                    continue;
                }
                return;
            case AltKind::normal:
                break;
        }
        if (s.after.kind == AtomKind::none) {
            // end of alternate: the nonterminal matched up to ci
            rtn(s.nt, cu, ci);
            if (s.pass_cont >= 0) {
                L = s.pass_cont;
                ci = cu;
                continue;
            }
            return;
        }
        int r = test_select(L, lex_.tokens(ci), ci);
        if (r < 0) {
            note_failure(ci, s);
            if (s.fail < 0) return;  // abandon
            L = s.fail;
            ci = cu;
            continue;
        }
        SlotId fail_cont = s.fail >= 0 ? s.fail : table_.abandon_slot;
        switch (s.after.kind) {
            case AtomKind::token:
                add_bsr({s.next, cu, ci, r});
                ci = r;
                L = s.next;
                continue;
            case AtomKind::call:
            case AtomKind::and_pred:
                call(s.next, fail_cont, s.after.sym, cu, ci);
                return;
            case AtomKind::not_pred:
                // swapped continuations: the body's match drives the failure
                // path, its failure resumes after the lookahead
                call(fail_cont, s.next, s.after.sym, cu, ci);
                return;
            case AtomKind::none:
                break;  // unreachable
        }
    }
}

void Engine::run() {
    add_nt(table_.start_nt, 0);
    while (!queue_.empty()) process(pop_descriptor());
}

const PoppedResults* Engine::popped(int nt, int j) const {
    auto it = popped_.find(key(nt, j));
    return it == popped_.end() ? nullptr : &it->second;
}

std::vector<CrfEdge> Engine::crf_edges(int nt, int j) const {
    auto it = crf_.find(key(nt, j));
    if (it == crf_.end()) return {};
    return it->second.edges;
}

bool Engine::has_crf_node(int nt, int j) const { return crf_.count(key(nt, j)) > 0; }

ParseResult Engine::take_result() {
    ParseResult res;
    if (const PoppedResults* p = popped(table_.start_nt, 0)) res.extents = p->extents;
    res.matched = !res.extents.empty();
    res.max_extent = res.matched ? res.extents.back() : -1;
    res.bsr.assign(bsr_.begin(), bsr_.end());
    std::sort(res.bsr.begin(), res.bsr.end());
    res.furthest_failure = failure_;
    res.stats = stats_;
    return res;
}

ParseResult parse(const SlotTable& table, const LexTable& lex, std::string_view input,
                  const ParseOptions& opts) {
    Engine engine(table, lex, input, opts);
    engine.run();
    return engine.take_result();
}

}  // namespace pegll

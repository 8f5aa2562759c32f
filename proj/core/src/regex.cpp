// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/regex.hpp"

#include <algorithm>
#include <cassert>

namespace pegll::rx {

namespace {

class ReParser {
public:
    ReParser(std::string_view src, Diagnostics& diags) : src_(src), diags_(diags) {}

    std::optional<ReNode> parse() {
        ReNode node = alternation();
        if (!ok_) return std::nullopt;
        if (pos_ != src_.size()) {
            error("unexpected ')'");
            return std::nullopt;
        }
        return node;
    }

private:
    void error(const std::string& msg) {
        if (ok_) diags_.push_back({{}, msg});
        ok_ = false;
    }

    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    ReNode alternation() {
        std::vector<ReNode> branches;
        branches.push_back(concat());
        while (ok_ && !at_end() && peek() == '|') {
            ++pos_;
            branches.push_back(concat());
        }
        if (branches.size() == 1) return std::move(branches[0]);
        ReNode out{ReKind::alt};
        out.kids = std::move(branches);
        return out;
    }

    ReNode concat() {
        std::vector<ReNode> parts;
        while (ok_ && !at_end() && peek() != '|' && peek() != ')') parts.push_back(repeat());
        if (parts.empty()) return ReNode{ReKind::empty};  // empty branch, e.g. (x|)
        if (parts.size() == 1) return std::move(parts[0]);
        ReNode out{ReKind::seq};
        out.kids = std::move(parts);
        return out;
    }

    ReNode repeat() {
        ReNode base = atom();
        if (ok_ && !at_end()) {
            char c = peek();
            if (c == '*' || c == '+' || c == '?') {
                ++pos_;
                ReNode out{c == '*' ? ReKind::star : c == '+' ? ReKind::plus : ReKind::opt};
                out.kids.push_back(std::move(base));
                // a second quantifier in a row has no operand
                if (!at_end() && (peek() == '*' || peek() == '+' || peek() == '?'))
                    error("quantifier without operand");
                return out;
            }
        }
        return base;
    }

    ReNode atom() {
        if (at_end()) {
            error("pattern ended unexpectedly");
            return ReNode{ReKind::empty};
        }
        char c = src_[pos_];
        switch (c) {
            case '(': {
                ++pos_;
                ReNode inner = alternation();
                if (at_end() || peek() != ')') {
                    error("missing ')'");
                    return inner;
                }
                ++pos_;
                return inner;
            }
            case '[': return char_class();
            case '.': {
                ++pos_;
                ReNode out{ReKind::any};
                return out;
            }
            case '\\': return escape();
            case '*':
            case '+':
            case '?': {
                ++pos_;
                error("quantifier without operand");
                return ReNode{ReKind::empty};
            }
            case ')':
            case '|':
                error("unexpected character in pattern");
                return ReNode{ReKind::empty};
            default: {
                ++pos_;
                ReNode out{ReKind::chr};
                out.ch = static_cast<uint8_t>(c);
                return out;
            }
        }
    }

    ReNode escape() {
        ++pos_;  // backslash
        if (at_end()) {
            error("trailing backslash");
            return ReNode{ReKind::empty};
        }
        char c = src_[pos_++];
        ReNode out{ReKind::chr};
        switch (c) {
            case 'n': out.ch = '\n'; break;
            case 't': out.ch = '\t'; break;
            case 'r': out.ch = '\r'; break;
            default: out.ch = static_cast<uint8_t>(c); break;
        }
        return out;
    }

    ReNode char_class() {
        ++pos_;  // '['
        ReNode out{ReKind::cls};
        if (!at_end() && peek() == '^') {
            out.cls.negate = true;
            ++pos_;
        }
        bool first = true;
        while (!at_end() && (peek() != ']' || first)) {
            uint8_t lo = class_char();
            uint8_t hi = lo;
            if (!ok_) break;
            if (!at_end() && peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] != ']') {
                ++pos_;
                hi = class_char();
                if (hi < lo) {
                    error("invalid character range");
                    break;
                }
            }
            out.cls.ranges.emplace_back(lo, hi);
            first = false;
        }
        if (at_end() || peek() != ']') {
            error("missing ']'");
            return out;
        }
        ++pos_;
        if (out.cls.ranges.empty()) {
            error("empty character class");
        }
        return out;
    }

    uint8_t class_char() {
        char c = src_[pos_++];
        if (c != '\\') return static_cast<uint8_t>(c);
        if (at_end()) {
            error("trailing backslash");
            return 0;
        }
        char e = src_[pos_++];
        switch (e) {
            case 'n': return '\n';
            case 't': return '\t';
            case 'r': return '\r';
            default: return static_cast<uint8_t>(e);
        }
    }

    std::string_view src_;
    Diagnostics& diags_;
    size_t pos_ = 0;
    bool ok_ = true;
};

}  // namespace

std::optional<ReNode> parse_regex(std::string_view pattern, Diagnostics& diags) {
    return ReParser(pattern, diags).parse();
}

bool matches_empty(const ReNode& re) {
    switch (re.kind) {
        case ReKind::empty:
        case ReKind::star:
        case ReKind::opt: return true;
        case ReKind::chr:
        case ReKind::any:
        case ReKind::cls: return false;
        case ReKind::plus: return matches_empty(re.kids[0]);
        case ReKind::seq:
            return std::all_of(re.kids.begin(), re.kids.end(),
                               [](const ReNode& k) { return matches_empty(k); });
        case ReKind::alt:
            return std::any_of(re.kids.begin(), re.kids.end(),
                               [](const ReNode& k) { return matches_empty(k); });
    }
    return false;
}

namespace {

struct Frag {
    int start;
    int end;
};

class NfaBuilder {
public:
    Nfa take() && { return std::move(nfa_); }

    int state() {
        nfa_.states.emplace_back();
        return static_cast<int>(nfa_.states.size()) - 1;
    }

    void eps(int from, int to) { nfa_.states[from].eps.push_back(to); }
    void edge(int from, CharClass on, int to) {
        nfa_.states[from].edges.push_back({std::move(on), to});
    }

    Frag build(const ReNode& re) {
        switch (re.kind) {
            case ReKind::empty: {
                int s = state();
                return {s, s};
            }
            case ReKind::chr: {
                CharClass c;
                c.ranges.emplace_back(re.ch, re.ch);
                return edge_frag(std::move(c));
            }
            case ReKind::any: {
                // any byte except newline
                CharClass c;
                c.negate = true;
                c.ranges.emplace_back('\n', '\n');
                return edge_frag(std::move(c));
            }
            case ReKind::cls: return edge_frag(re.cls);
            case ReKind::seq: {
                Frag f = build(re.kids[0]);
                for (size_t i = 1; i < re.kids.size(); ++i) {
                    Frag g = build(re.kids[i]);
                    eps(f.end, g.start);
                    f.end = g.end;
                }
                return f;
            }
            case ReKind::alt: {
                int s = state(), e = state();
                for (const ReNode& k : re.kids) {
                    Frag f = build(k);
                    eps(s, f.start);
                    eps(f.end, e);
                }
                return {s, e};
            }
            case ReKind::star: {
                Frag f = build(re.kids[0]);
                int s = state(), e = state();
                eps(s, f.start);
                eps(s, e);
                eps(f.end, f.start);
                eps(f.end, e);
                return {s, e};
            }
            case ReKind::plus: {
                Frag f = build(re.kids[0]);
                int e = state();
                eps(f.end, f.start);
                eps(f.end, e);
                return {f.start, e};
            }
            case ReKind::opt: {
                Frag f = build(re.kids[0]);
                int s = state(), e = state();
                eps(s, f.start);
                eps(s, e);
                eps(f.end, e);
                return {s, e};
            }
        }
        int s = state();
        return {s, s};
    }

private:
    Frag edge_frag(CharClass c) {
        int s = state(), e = state();
        edge(s, std::move(c), e);
        return {s, e};
    }

    Nfa nfa_;
};

}  // namespace

Nfa build_nfa(const ReNode& re) {
    NfaBuilder b;
    Frag f = b.build(re);
    Nfa nfa = std::move(b).take();
    nfa.start = f.start;
    nfa.accept = f.end;
    return nfa;
}

Nfa literal_nfa(std::string_view text) {
    ReNode seq{ReKind::seq};
    for (char c : text) {
        ReNode chr{ReKind::chr};
        chr.ch = static_cast<uint8_t>(c);
        seq.kids.push_back(std::move(chr));
    }
    if (seq.kids.size() == 1) return build_nfa(seq.kids[0]);
    return build_nfa(seq);
}

int longest_match(const Nfa& nfa, std::string_view input, int pos) {
    size_t n = nfa.states.size();
    std::vector<bool> cur(n, false), next(n, false);
    std::vector<int> stack;

    auto add = [&](std::vector<bool>& set, int s) {
        if (set[s]) return;
        set[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : nfa.states[v].eps)
                if (!set[w]) {
                    set[w] = true;
                    stack.push_back(w);
                }
        }
    };

    add(cur, nfa.start);
    int last_accept = cur[nfa.accept] ? pos : -1;
    for (int i = pos; i < static_cast<int>(input.size()); ++i) {
        uint8_t c = static_cast<uint8_t>(input[i]);
        std::fill(next.begin(), next.end(), false);
        bool alive = false;
        for (size_t s = 0; s < n; ++s) {
            if (!cur[s]) continue;
            for (const Nfa::Edge& e : nfa.states[s].edges)
                if (e.on.matches(c)) {
                    add(next, e.to);
                    alive = true;
                }
        }
        if (!alive) break;
        cur.swap(next);
        if (cur[nfa.accept]) last_accept = i + 1;
    }
    return last_accept;
}

}  // namespace pegll::rx

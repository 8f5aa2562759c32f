// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/grammar.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace pegll {

bool same_structure(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.name != b.name) return false;
    if (a.children.size() != b.children.size()) return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!same_structure(a.children[i], b.children[i])) return false;
    return true;
}

namespace {

int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::ordered:
        case ExprKind::unordered: return 0;
        case ExprKind::seq: return 1;
        default: return 2;
    }
}

void print_expr(std::ostream& os, const Expr& e, int min_prec) {
    bool paren = precedence(e.kind) < min_prec;
    if (paren) os << "( ";
    switch (e.kind) {
        case ExprKind::literal:
        case ExprKind::nonterminal: os << e.name; break;
        case ExprKind::empty: os << "eps"; break;
        case ExprKind::fail: os << "FAIL"; break;
        case ExprKind::seq:
            for (size_t i = 0; i < e.children.size(); ++i) {
                if (i) os << ' ';
                print_expr(os, e.children[i], 2);
            }
            break;
        case ExprKind::ordered:
        case ExprKind::unordered: {
            const char* sep = e.kind == ExprKind::ordered ? " / " : " | ";
            for (size_t i = 0; i < e.children.size(); ++i) {
                if (i) os << sep;
                print_expr(os, e.children[i], 1);
            }
            break;
        }
        case ExprKind::and_pred:
            os << '&';
            print_expr(os, e.children[0], 2);
            break;
        case ExprKind::not_pred:
            os << '!';
            print_expr(os, e.children[0], 2);
            break;
        case ExprKind::opt:
            print_expr(os, e.children[0], 2);
            os << '?';
            break;
        case ExprKind::star:
            print_expr(os, e.children[0], 2);
            os << '*';
            break;
        case ExprKind::plus:
            print_expr(os, e.children[0], 2);
            os << '+';
            break;
        case ExprKind::group:
            os << "( ";
            print_expr(os, e.children[0], 0);
            os << " )";
            break;
    }
    if (paren) os << " )";
}

}  // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print_expr(os, e, 0);
    return os.str();
}

bool Grammar::add_rule(Rule r) {
    if (rule_index_.count(r.name)) return false;
    rule_index_[r.name] = static_cast<int>(rules.size());
    rules.push_back(std::move(r));
    return true;
}

int Grammar::add_token(TokenDef t) {
    if (token_index_.count(t.name)) return -1;
    int id = static_cast<int>(tokens.size());
    token_index_[t.name] = id;
    tokens.push_back(std::move(t));
    return id;
}

// ---------------------------------------------------------------------------
// DSL tokenizer

namespace {

enum class Tok {
    end,
    ident,    // rule or token name
    literal,  // "..."  (text = unescaped content)
    regex,    // /.../  (text = raw body)
    kw_eps,
    kw_skip,
    kw_start,
    dollar,
    colon,
    semi,
    equals,
    slash,
    bar,
    amp,
    bang,
    quest,
    star,
    plus,
    lparen,
    rparen,
    error,
};

struct DslToken {
    Tok kind;
    std::string text;
    SourceLoc loc;
};

class DslScanner {
public:
    DslScanner(std::string_view src, Diagnostics& diags) : src_(src), diags_(diags) {}

    // Regex bodies are only valid directly after '='; the parser flips this.
    bool expect_regex = false;

    DslToken next() {
        skip_ws();
        SourceLoc loc = here();
        if (pos_ >= src_.size()) return {Tok::end, "", loc};
        char c = src_[pos_];
        if (expect_regex && c == '/') return scan_regex(loc);
        switch (c) {
            case ':': ++pos_; return {Tok::colon, ":", loc};
            case ';': ++pos_; return {Tok::semi, ";", loc};
            case '=': ++pos_; return {Tok::equals, "=", loc};
            case '/': ++pos_; return {Tok::slash, "/", loc};
            case '|': ++pos_; return {Tok::bar, "|", loc};
            case '&': ++pos_; return {Tok::amp, "&", loc};
            case '!': ++pos_; return {Tok::bang, "!", loc};
            case '?': ++pos_; return {Tok::quest, "?", loc};
            case '*': ++pos_; return {Tok::star, "*", loc};
            case '+': ++pos_; return {Tok::plus, "+", loc};
            case '(': ++pos_; return {Tok::lparen, "(", loc};
            case ')': ++pos_; return {Tok::rparen, ")", loc};
            case '$': ++pos_; return {Tok::dollar, "$", loc};
            case '"': return scan_literal(loc);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string word(src_.substr(start, pos_ - start));
            if (word == "eps") return {Tok::kw_eps, word, loc};
            if (word == "skip") return {Tok::kw_skip, word, loc};
            if (word == "start") return {Tok::kw_start, word, loc};
            return {Tok::ident, word, loc};
        }
        diags_.push_back({loc, std::string("unexpected character '") + c + "'"});
        ++pos_;
        return {Tok::error, std::string(1, c), loc};
    }

private:
    SourceLoc here() const { return {line_, static_cast<int>(pos_ - line_start_) + 1}; }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++pos_;
                ++line_;
                line_start_ = pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    DslToken scan_literal(SourceLoc loc) {
        ++pos_;  // opening quote
        std::string out;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
            char c = src_[pos_++];
            if (c == '\\' && pos_ < src_.size()) {
                char e = src_[pos_++];
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    default: out += e; break;
                }
            } else {
                out += c;
            }
        }
        if (pos_ >= src_.size() || src_[pos_] != '"') {
            diags_.push_back({loc, "unterminated string literal"});
            return {Tok::error, out, loc};
        }
        ++pos_;
        return {Tok::literal, out, loc};
    }

    DslToken scan_regex(SourceLoc loc) {
        ++pos_;  // opening slash
        std::string out;
        while (pos_ < src_.size() && src_[pos_] != '/' && src_[pos_] != '\n') {
            char c = src_[pos_++];
            if (c == '\\' && pos_ < src_.size()) {
                out += c;
                out += src_[pos_++];
            } else {
                out += c;
            }
        }
        if (pos_ >= src_.size() || src_[pos_] != '/') {
            diags_.push_back({loc, "unterminated regex"});
            return {Tok::error, out, loc};
        }
        ++pos_;
        return {Tok::regex, out, loc};
    }

    std::string_view src_;
    Diagnostics& diags_;
    size_t pos_ = 0;
    size_t line_start_ = 0;
    int line_ = 1;
};

// ---------------------------------------------------------------------------
// DSL parser

class DslParser {
public:
    DslParser(std::string_view src, Diagnostics& diags)
        : scanner_(src, diags), diags_(diags) {
        advance();
    }

    std::optional<Grammar> parse() {
        while (cur_.kind != Tok::end) {
            if (!item()) recover();
        }
        finish();
        if (!diags_.empty()) return std::nullopt;
        return std::move(g_);
    }

private:
    void advance() { cur_ = scanner_.next(); }

    bool eat(Tok k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    void error(const std::string& msg) { diags_.push_back({cur_.loc, msg}); }

    void recover() {
        // resynchronize at the next ';'
        while (cur_.kind != Tok::semi && cur_.kind != Tok::end) advance();
        eat(Tok::semi);
    }

    bool item() {
        if (cur_.kind == Tok::kw_start) return start_directive();
        if (cur_.kind == Tok::kw_skip) return token_def(true);
        if (cur_.kind == Tok::ident) {
            // lookahead on the delimiter decides rule vs token def
            DslToken name = cur_;
            advance();
            if (cur_.kind == Tok::colon) return rule_def(name);
            if (cur_.kind == Tok::equals) return finish_token(name, false);
            error("expected ':' or '=' after name '" + name.text + "'");
            return false;
        }
        error("expected a rule, token definition, or start directive");
        return false;
    }

    bool start_directive() {
        SourceLoc loc = cur_.loc;
        advance();
        if (cur_.kind != Tok::ident) {
            error("expected rule name after 'start'");
            return false;
        }
        if (!start_name_.empty()) diags_.push_back({loc, "duplicate start directive"});
        start_name_ = cur_.text;
        start_loc_ = cur_.loc;
        advance();
        if (!eat(Tok::semi)) {
            error("expected ';' after start directive");
            return false;
        }
        return true;
    }

    bool token_def(bool is_skip) {
        advance();  // 'skip'
        if (cur_.kind != Tok::ident) {
            error("expected token name after 'skip'");
            return false;
        }
        DslToken name = cur_;
        advance();
        if (cur_.kind != Tok::equals) {
            error("expected '=' in token definition");
            return false;
        }
        return finish_token(name, is_skip);
    }

    // Called with cur_ == '='. The scanner is told a regex body follows so the
    // opening '/' is not read as the ordered-choice operator.
    bool finish_token(const DslToken& name, bool is_skip) {
        scanner_.expect_regex = true;
        advance();  // consume '=', scan the regex
        scanner_.expect_regex = false;
        if (cur_.kind != Tok::regex) {
            error("expected /regex/ in token definition");
            return false;
        }
        TokenDef def{name.text, cur_.text, is_skip, false, name.loc};
        advance();
        if (!eat(Tok::semi)) {
            error("expected ';' after token definition");
            return false;
        }
        if (g_.token_id(name.text) >= 0) {
            diags_.push_back({name.loc, "duplicate token '" + name.text + "'"});
            return true;
        }
        pending_tokens_.push_back(std::move(def));
        return true;
    }

    bool rule_def(const DslToken& name) {
        advance();  // ':'
        Expr body = choice();
        if (!eat(Tok::semi)) {
            error("expected ';' after rule '" + name.text + "'");
            return false;
        }
        if (!rule_names_.insert(name.text).second) {
            diags_.push_back({name.loc, "duplicate rule '" + name.text + "'"});
            return true;
        }
        pending_rules_.push_back({name.text, std::move(body), name.loc});
        return true;
    }

    // choice := alt ( '/' alt )*  |  alt ( '|' alt )*
    Expr choice() {
        SourceLoc loc = cur_.loc;
        std::vector<Expr> alts;
        alts.push_back(alternate());
        ExprKind kind = ExprKind::ordered;
        bool decided = false;
        while (cur_.kind == Tok::slash || cur_.kind == Tok::bar) {
            ExprKind k = cur_.kind == Tok::slash ? ExprKind::ordered : ExprKind::unordered;
            if (decided && k != kind)
                error("mixed choice operators '/' and '|' at one level; use parentheses");
            kind = k;
            decided = true;
            advance();
            alts.push_back(alternate());
        }
        return Expr::make(kind, std::move(alts), loc);
    }

    // alternate := prefixed+
    Expr alternate() {
        SourceLoc loc = cur_.loc;
        std::vector<Expr> elems;
        while (starts_atom()) elems.push_back(prefixed());
        if (elems.empty()) {
            error("empty alternate (use 'eps' to match nothing)");
            return Expr::eps(loc);
        }
        return Expr::make(ExprKind::seq, std::move(elems), loc);
    }

    bool starts_atom() const {
        switch (cur_.kind) {
            case Tok::ident:
            case Tok::literal:
            case Tok::lparen:
            case Tok::kw_eps:
            case Tok::dollar:
            case Tok::amp:
            case Tok::bang: return true;
            default: return false;
        }
    }

    Expr prefixed() {
        SourceLoc loc = cur_.loc;
        if (cur_.kind == Tok::amp || cur_.kind == Tok::bang) {
            ExprKind k = cur_.kind == Tok::amp ? ExprKind::and_pred : ExprKind::not_pred;
            advance();
            return Expr::make(k, {suffixed()}, loc);
        }
        return suffixed();
    }

    Expr suffixed() {
        Expr base = atom();
        SourceLoc loc = cur_.loc;
        switch (cur_.kind) {
            case Tok::quest: advance(); return Expr::make(ExprKind::opt, {std::move(base)}, loc);
            case Tok::star: advance(); return Expr::make(ExprKind::star, {std::move(base)}, loc);
            case Tok::plus: advance(); return Expr::make(ExprKind::plus, {std::move(base)}, loc);
            default: return base;
        }
    }

    Expr atom() {
        SourceLoc loc = cur_.loc;
        switch (cur_.kind) {
            case Tok::ident: {
                std::string name = cur_.text;
                advance();
                return Expr::nt(std::move(name), loc);  // token refs fixed up in finish()
            }
            case Tok::literal: {
                std::string text = cur_.text;
                advance();
                if (text.empty()) {
                    diags_.push_back({loc, "empty literal cannot match"});
                    return Expr::eps(loc);
                }
                std::string tok_name = "\"" + cur_escape(text) + "\"";
                literal_defs_.emplace_back(tok_name, text);
                return Expr::lit(std::move(tok_name), loc);
            }
            case Tok::kw_eps: advance(); return Expr::eps(loc);
            case Tok::dollar: advance(); return Expr::lit("$", loc);
            case Tok::lparen: {
                advance();
                Expr inner = choice();
                if (!eat(Tok::rparen)) error("expected ')'");
                return Expr::make(ExprKind::group, {std::move(inner)}, loc);
            }
            default:
                error("expected an atom");
                advance();
                return Expr::eps(loc);
        }
    }

    static std::string cur_escape(const std::string& raw) {
        std::string out;
        for (char c : raw) {
            switch (c) {
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                default: out += c;
            }
        }
        return out;
    }

    void finish() {
        // token namespace: defined tokens, then inline literals
        for (auto& def : pending_tokens_) {
            if (rule_names_.count(def.name)) {
                diags_.push_back({def.loc, "'" + def.name + "' is both a token and a rule"});
                continue;
            }
            g_.add_token(def);
        }
        for (auto& [tok_name, text] : literal_defs_) {
            if (g_.token_id(tok_name) < 0)
                g_.add_token({tok_name, text, false, true, {}});
        }
        // register all rules first so self and forward references resolve
        for (auto& rule : pending_rules_) g_.add_rule(std::move(rule));
        for (auto& rule : g_.rules) classify(rule.body);
        if (g_.rules.empty()) {
            diags_.push_back({{}, "grammar has no rules"});
            return;
        }
        if (start_name_.empty()) {
            g_.start = g_.rules.front().name;
        } else {
            if (g_.rule_index(start_name_) < 0)
                diags_.push_back({start_loc_, "start rule '" + start_name_ + "' is not defined"});
            g_.start = start_name_;
        }
    }

    void classify(Expr& e) {
        if (e.kind == ExprKind::nonterminal) {
            int tok = g_.token_id(e.name);
            if (tok >= 0) {
                if (g_.tokens[tok].is_skip)
                    diags_.push_back({e.loc, "skip token '" + e.name + "' cannot be used in a rule"});
                e.kind = ExprKind::literal;
            } else if (g_.rule_index(e.name) < 0) {
                diags_.push_back({e.loc, "unknown nonterminal '" + e.name + "'"});
            }
        }
        for (auto& c : e.children) classify(c);
    }

    DslScanner scanner_;
    Diagnostics& diags_;
    DslToken cur_{Tok::end, "", {}};
    Grammar g_;
    std::string start_name_;
    SourceLoc start_loc_;
    std::vector<Rule> pending_rules_;
    std::vector<TokenDef> pending_tokens_;
    std::vector<std::pair<std::string, std::string>> literal_defs_;  // name, raw text
    std::set<std::string> rule_names_;
};

}  // namespace

GrammarResult parse_grammar(std::string_view text) {
    GrammarResult result;
    DslParser parser(text, result.diagnostics);
    result.grammar = parser.parse();
    return result;
}

std::string to_string(const Grammar& g) {
    std::ostringstream os;
    for (size_t i = 1; i < g.tokens.size(); ++i) {
        const TokenDef& t = g.tokens[i];
        if (t.is_literal) continue;  // implied by use
        os << (t.is_skip ? "skip " : "") << t.name << " = /" << t.pattern << "/ ;\n";
    }
    os << "start " << g.start << " ;\n";
    for (const Rule& r : g.rules) os << r.name << " : " << to_string(r.body) << " ;\n";
    return os.str();
}

}  // namespace pegll

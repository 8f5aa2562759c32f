// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "pegll/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pegll/analysis.hpp"
#include "pegll/desugar.hpp"
#include "pegll/engine.hpp"
#include "pegll/forest.hpp"
#include "pegll/grammar.hpp"
#include "pegll/lexer.hpp"
#include "pegll/oracle.hpp"
#include "pegll/slot_table.hpp"

namespace pegll::cli {

namespace {

using nlohmann::ordered_json;

constexpr int exit_match = 0;
constexpr int exit_no_match = 1;
constexpr int exit_error = 2;

struct LoadedGrammar {
    Grammar desugared;
    GrammarAnalysis analysis;
    SlotTable table;
    LexTable lex;
};

std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot read '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_diags(const Diagnostics& diags, const std::string& path, std::ostream& err) {
    for (const Diagnostic& d : diags) err << path << ":" << to_string(d) << "\n";
}

std::optional<LoadedGrammar> load_grammar(const std::string& path, std::ostream& err) {
    auto text = read_file(path, err);
    if (!text) return std::nullopt;
    GrammarResult parsed = parse_grammar(*text);
    if (!parsed.ok()) {
        print_diags(parsed.diagnostics, path, err);
        return std::nullopt;
    }
    LoadedGrammar out;
    out.desugared = desugar(*parsed.grammar);
    out.analysis = analyze(out.desugared);
    Diagnostics rec = check_left_recursion(out.desugared, out.analysis);
    if (!rec.empty()) {
        print_diags(rec, path, err);
        return std::nullopt;
    }
    Diagnostics lex_diags;
    out.lex = compile_tokens(out.desugared.tokens, lex_diags);
    if (!lex_diags.empty()) {
        print_diags(lex_diags, path, err);
        return std::nullopt;
    }
    out.table = compile_slots(out.desugared, out.analysis);
    return out;
}

std::string expected_tokens(const SlotTable& table, const TokenSet& set) {
    std::string out;
    for (int id : set.values()) {
        if (!out.empty()) out += ", ";
        out += table.token_names[id];
    }
    return out.empty() ? "<nothing>" : out;
}

std::string extents_text(const std::vector<int>& extents) {
    std::string out = "{";
    for (size_t i = 0; i < extents.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(extents[i]);
    }
    return out + "}";
}

// --full accepts iff some extent, after trailing-skip consumption, reaches
// end of input.
bool full_match(LexSession& lex, const std::vector<int>& extents) {
    for (int k : extents)
        if (lex.tokens(k).at_end) return true;
    return false;
}

ordered_json tree_json(const ParseTree& t) {
    ordered_json j;
    switch (t.kind) {
        case ParseTree::Kind::nonterminal:
            j["nt"] = t.name;
            j["alt"] = t.alt;
            break;
        case ParseTree::Kind::token:
            j["token"] = t.name;
            break;
        case ParseTree::Kind::lookahead:
            j["lookahead"] = t.name;
            break;
    }
    j["i"] = t.i;
    j["k"] = t.k;
    if (t.kind == ParseTree::Kind::nonterminal) {
        ordered_json kids = ordered_json::array();
        for (const ParseTree& c : t.children) kids.push_back(tree_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

// BSR dump entries, variant-merged and deterministically ordered.
std::vector<std::pair<std::string, BsrElement>> bsr_lines(const SlotTable& table,
                                                          const std::vector<BsrElement>& bsr) {
    std::vector<std::pair<std::string, BsrElement>> out;
    for (const BsrElement& e : bsr) out.emplace_back(table.slot(e.slot).bsr_label, e);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return std::tie(a.second.i, a.second.j, a.second.k) <
               std::tie(b.second.i, b.second.j, b.second.k);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) {
                              return a.first == b.first && a.second.i == b.second.i &&
                                     a.second.j == b.second.j && a.second.k == b.second.k;
                          }),
              out.end());
    return out;
}

int cmd_check(const std::string& grammar_path, bool json, std::ostream& out, std::ostream& err) {
    auto loaded = load_grammar(grammar_path, err);
    if (!loaded) return exit_error;
    const Grammar& g = loaded->desugared;
    const SlotTable& table = loaded->table;
    if (json) {
        ordered_json j;
        j["start"] = g.start;
        ordered_json rules = ordered_json::array();
        for (size_t i = 0; i < g.rules.size(); ++i) {
            ordered_json r;
            r["name"] = g.rules[i].name;
            r["nullable"] = loaded->analysis.nullable[i];
            ordered_json first = ordered_json::array();
            for (int t : loaded->analysis.first[i].values()) first.push_back(table.token_names[t]);
            r["first"] = std::move(first);
            rules.push_back(std::move(r));
        }
        j["rules"] = std::move(rules);
        ordered_json tokens = ordered_json::array();
        for (size_t id = 1; id < g.tokens.size(); ++id) {
            ordered_json t;
            t["name"] = g.tokens[id].name;
            t["skip"] = g.tokens[id].is_skip;
            tokens.push_back(std::move(t));
        }
        j["tokens"] = std::move(tokens);
        ordered_json slots = ordered_json::array();
        for (const Slot& s : table.slots) slots.push_back(s.label);
        j["slots"] = std::move(slots);
        out << j.dump(2) << "\n";
        return exit_match;
    }
    out << "ok: " << g.rules.size() << " rules, " << g.tokens.size() - 1 << " tokens, start "
        << g.start << "\n";
    out << "nullable/FIRST:\n";
    for (size_t i = 0; i < g.rules.size(); ++i) {
        out << "  " << g.rules[i].name << " : nullable="
            << (loaded->analysis.nullable[i] ? "yes" : "no") << " first={";
        bool comma = false;
        for (int t : loaded->analysis.first[i].values()) {
            if (comma) out << ", ";
            out << table.token_names[t];
            comma = true;
        }
        out << "}\n";
    }
    out << "slots:\n" << table.dump();
    return exit_match;
}

struct ParseFlags {
    bool full = false;
    bool bsr = false;
    bool extents = false;
    bool trace = false;
    bool json = false;
    int trees = 0;
};

int cmd_parse(const std::string& grammar_path, const std::string& input, const ParseFlags& flags,
              std::ostream& out, std::ostream& err) {
    auto loaded = load_grammar(grammar_path, err);
    if (!loaded) return exit_error;

    std::ostringstream trace;
    ParseOptions opts;
    if (flags.trace) opts.trace = &trace;
    ParseResult result = parse(loaded->table, loaded->lex, input, opts);

    LexSession lex(loaded->lex, input);
    bool full_ok = full_match(lex, result.extents);
    bool accepted = flags.full ? full_ok : result.matched;

    Forest forest(loaded->table, result.bsr);
    int start_nt = loaded->table.start_nt;
    Forest::Extraction extraction;
    if (flags.trees > 0 && result.matched)
        extraction = forest.extract_trees(start_nt, 0, result.max_extent, flags.trees);

    if (flags.json) {
        ordered_json j;
        j["matched"] = result.matched;
        j["extents"] = result.extents;
        j["maxExtent"] = result.max_extent;
        if (flags.full) j["fullMatch"] = full_ok;
        if (result.furthest_failure.pos >= 0) {
            ordered_json ff;
            ff["pos"] = result.furthest_failure.pos;
            ordered_json names = ordered_json::array();
            for (int t : result.furthest_failure.expected.values())
                names.push_back(loaded->table.token_names[t]);
            ff["expected"] = std::move(names);
            j["furthestFailure"] = std::move(ff);
        }
        if (flags.bsr) {
            ordered_json arr = ordered_json::array();
            for (const auto& [label, e] : bsr_lines(loaded->table, result.bsr)) {
                ordered_json el;
                el["slot"] = label;
                el["i"] = e.i;
                el["j"] = e.j;
                el["k"] = e.k;
                arr.push_back(std::move(el));
            }
            j["bsr"] = std::move(arr);
        }
        if (flags.trees > 0) {
            ordered_json arr = ordered_json::array();
            for (const ParseTree& t : extraction.trees) arr.push_back(tree_json(t));
            j["trees"] = std::move(arr);
            j["treesTruncated"] = extraction.truncated;
        }
        if (flags.trace) j["trace"] = trace.str();
        out << j.dump(2) << "\n";
        return accepted ? exit_match : exit_no_match;
    }

    if (flags.trace) out << trace.str();
    if (result.matched) {
        out << "matched: extents " << extents_text(result.extents) << ", max "
            << result.max_extent << "\n";
    } else {
        out << "no match\n";
    }
    if (flags.full)
        out << "full match: " << (full_ok ? "yes" : "no") << " (input length "
            << input.size() << ")\n";
    if (!accepted && result.furthest_failure.pos >= 0)
        out << "furthest failure at " << result.furthest_failure.pos << ": expected "
            << expected_tokens(loaded->table, result.furthest_failure.expected) << "\n";
    if (flags.extents)
        for (int k : result.extents) out << "extent " << k << "\n";
    if (flags.bsr) {
        out << "bsr:\n";
        for (const auto& [label, e] : bsr_lines(loaded->table, result.bsr))
            out << "  (" << label << ", " << e.i << ", " << e.j << ", " << e.k << ")\n";
    }
    if (flags.trees > 0) {
        if (result.matched) {
            out << "trees: " << extraction.trees.size()
                << (extraction.truncated ? " (truncated)" : "") << "\n";
            for (size_t i = 0; i < extraction.trees.size(); ++i) {
                out << "tree " << i + 1 << ":\n";
                std::istringstream lines(to_string(extraction.trees[i]));
                std::string line;
                while (std::getline(lines, line)) out << "  " << line << "\n";
            }
        } else {
            out << "trees: 0\n";
        }
    }
    return accepted ? exit_match : exit_no_match;
}

int cmd_compare(const std::string& grammar_path, const std::string& input, bool full,
                std::ostream& out, std::ostream& err) {
    auto loaded = load_grammar(grammar_path, err);
    if (!loaded) return exit_error;
    ParseResult engine_result = parse(loaded->table, loaded->lex, input);
    oracle::Evaluator oracle(loaded->desugared, loaded->lex, input);
    oracle::EvalResult oracle_result = oracle.eval_start();

    bool agree = engine_result.extents == oracle_result.extents;
    out << "engine: " << extents_text(engine_result.extents) << "\n";
    out << "oracle: " << extents_text(oracle_result.extents) << "\n";
    if (full) {
        LexSession lex(loaded->lex, input);
        out << "engine full match: " << (full_match(lex, engine_result.extents) ? "yes" : "no")
            << "\n";
        out << "oracle full match: " << (full_match(lex, oracle_result.extents) ? "yes" : "no")
            << "\n";
    }
    out << "agreement: " << (agree ? "yes" : "no") << "\n";
    return agree ? exit_match : exit_no_match;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pegll grammar toolkit"};
    app.require_subcommand(1);

    std::string grammar_path, input_path, inline_input;
    bool have_inline = false;

    auto* check = app.add_subcommand("check", "validate a grammar and dump its tables");
    bool check_json = false;
    check->add_option("grammar", grammar_path, "grammar file")->required();
    check->add_flag("--json", check_json, "structured output");

    ParseFlags pf;
    auto* parse_cmd = app.add_subcommand("parse", "parse an input with the engine");
    parse_cmd->add_option("grammar", grammar_path, "grammar file")->required();
    parse_cmd->add_option("input", input_path, "input file");
    parse_cmd->add_option("-e", inline_input, "inline input text");
    parse_cmd->add_flag("--full", pf.full, "accept only whole-input matches");
    parse_cmd->add_option("--trees", pf.trees, "extract up to N parse trees");
    parse_cmd->add_flag("--bsr", pf.bsr, "dump the BSR set");
    parse_cmd->add_flag("--extents", pf.extents, "list match extents");
    parse_cmd->add_flag("--trace", pf.trace, "dump the engine trace");
    parse_cmd->add_flag("--json", pf.json, "structured output");

    bool cmp_full = false;
    auto* compare = app.add_subcommand("compare", "run engine and oracle, report agreement");
    compare->add_option("grammar", grammar_path, "grammar file")->required();
    compare->add_option("input", input_path, "input file");
    compare->add_option("-e", inline_input, "inline input text");
    compare->add_flag("--full", cmp_full, "also report whole-input acceptance");

    std::vector<const char*> argv;
    argv.push_back("pegll");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_match;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    have_inline = !inline_input.empty() || (parse_cmd->count("-e") + compare->count("-e")) > 0;

    auto get_input = [&](std::ostream& which_err) -> std::optional<std::string> {
        if (have_inline && !input_path.empty()) {
            which_err << "error: give either an input file or -e, not both\n";
            return std::nullopt;
        }
        if (have_inline) return inline_input;
        if (input_path.empty()) {
            which_err << "error: an input (file or -e) is required\n";
            return std::nullopt;
        }
        return read_file(input_path, which_err);
    };

    if (check->parsed()) return cmd_check(grammar_path, check_json, out, err);
    if (parse_cmd->parsed()) {
        if (pf.trees < 0) {
            err << "error: --trees must be >= 0\n";
            return exit_error;
        }
        auto input = get_input(err);
        if (!input) return exit_error;
        return cmd_parse(grammar_path, *input, pf, out, err);
    }
    if (compare->parsed()) {
        auto input = get_input(err);
        if (!input) return exit_error;
        return cmd_compare(grammar_path, *input, cmp_full, out, err);
    }
    err << "error: no command\n";
    return exit_error;
}

}  // namespace pegll::cli

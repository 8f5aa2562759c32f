// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pegll/lexer.hpp"
#include "pegll/slot_table.hpp"
#include "pegll/token_set.hpp"

namespace pegll {

// (L, c_U, c_I): pending work — resume slot L, invocation started at c_U,
// input currently at c_I.
struct Descriptor {
    SlotId slot;
    int cu;
    int ci;
    friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

// Edgeless parse-forest node: nonterminal progress through slot `slot`,
// spanning [i, k) with the atom before the dot starting at j.
struct BsrElement {
    SlotId slot;
    int i;
    int j;
    int k;
    friend bool operator==(const BsrElement&, const BsrElement&) = default;
    friend auto operator<=>(const BsrElement&, const BsrElement&) = default;
};

struct DescriptorHash {
    size_t operator()(const Descriptor& d) const {
        uint64_t h = static_cast<uint32_t>(d.slot);
        h = h * 0x9e3779b97f4a7c15ull + static_cast<uint32_t>(d.cu);
        h = h * 0x9e3779b97f4a7c15ull + static_cast<uint32_t>(d.ci);
        return static_cast<size_t>(h ^ (h >> 32));
    }
};

struct BsrHash {
    size_t operator()(const BsrElement& e) const {
        uint64_t h = static_cast<uint32_t>(e.slot);
        h = h * 0x9e3779b97f4a7c15ull + static_cast<uint32_t>(e.i);
        h = h * 0x9e3779b97f4a7c15ull + static_cast<uint32_t>(e.j);
        h = h * 0x9e3779b97f4a7c15ull + static_cast<uint32_t>(e.k);
        return static_cast<size_t>(h ^ (h >> 32));
    }
};

enum class EdgeLabel : uint8_t { match, fail };
// Progress edges resume the caller past the consumed atom; failover edges
// land on a failure continuation (an alternate-initial slot, the bottom
// slot, or abandon). Match results crossing a failover edge — a negative
// lookahead's body succeeding — are treated as failures of the caller.
enum class EdgePolarity : uint8_t { progress, failover };

struct CrfEdge {
    SlotId slot;
    int i;
    EdgeLabel label;
    EdgePolarity polarity;
};

struct PoppedResults {
    std::vector<int> extents;  // sorted
    bool failed = false;
};

struct FurthestFailure {
    int pos = -1;  // skip-adjusted; -1 = no failure observed
    TokenSet expected;
};

struct EngineStats {
    int64_t descriptors_processed = 0;
    int64_t descriptors_enqueued = 0;
    int64_t descriptors_deduped = 0;
    int64_t processed_twice = 0;
    int64_t test_select_calls = 0;
    int64_t crf_nodes = 0;
    int64_t crf_edges = 0;
    int64_t popped_entries = 0;
};

struct ParseResult {
    bool matched = false;
    std::vector<int> extents;  // complete start-symbol extents at 0, sorted
    int max_extent = -1;
    std::vector<BsrElement> bsr;  // canonical order (slot, i, j, k)
    FurthestFailure furthest_failure;
    EngineStats stats;
};

struct ParseOptions {
    std::ostream* trace = nullptr;  // one stable-formatted line per event
};

// One parse session. `parse` drives a fresh session end to end; the session
// type itself is exposed so the individual operations (call/rtn/addMatch/...)
// can be driven and inspected directly.
class Engine {
public:
    static constexpr int fail_result = -1;

    Engine(const SlotTable& table, const LexTable& lex, std::string_view input,
           const ParseOptions& opts = {});

    void run();
    ParseResult take_result();

    // descriptor queue management
    void add_desc(SlotId slot, int i, int h);
    void add_nt(int nt, int i);
    void add_match(SlotId slot, int i, int j, int h);
    void add_fail(SlotId slot, int i, int j);

    // FailCRF operations
    void call(SlotId match_slot, SlotId fail_slot, int nt, int i, int j);
    void rtn(int nt, int j, int h);  // h == fail_result marks failure

    // descriptor filter; returns the best matched extent, or -1
    int test_select(SlotId slot, const TokenMap& t, int ci);

    // processes a single descriptor to completion (the in-descriptor loop)
    void process(Descriptor d);
    bool queue_empty() const { return queue_.empty(); }
    Descriptor pop_descriptor();

    // inspection
    const std::unordered_set<BsrElement, BsrHash>& bsr() const { return bsr_; }
    const PoppedResults* popped(int nt, int j) const;
    std::vector<CrfEdge> crf_edges(int nt, int j) const;
    bool has_crf_node(int nt, int j) const;
    size_t queue_size() const { return queue_.size(); }
    size_t seen_size() const { return seen_.size(); }
    const EngineStats& stats() const { return stats_; }
    LexSession& lexer() { return lex_; }

private:
    struct CrfNode {
        std::vector<CrfEdge> edges;
    };

    static uint64_t key(int nt, int j) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(nt)) << 32) |
               static_cast<uint32_t>(j);
    }

    EdgePolarity polarity_of(SlotId slot) const;
    // true if the edge was new
    bool add_edge(int nt, int j, CrfNode& node, const CrfEdge& edge);
    void dispatch(const CrfEdge& edge, int j, int h);
    void add_bsr(const BsrElement& e);
    void note_failure(int ci, const Slot& s);
    void trace_desc(const Descriptor& d);

    const SlotTable& table_;
    LexSession lex_;
    std::ostream* trace_;

    std::deque<Descriptor> queue_;
    std::unordered_map<Descriptor, bool, DescriptorHash> seen_;  // value: processed
    std::unordered_map<uint64_t, CrfNode> crf_;
    std::unordered_map<uint64_t, PoppedResults> popped_;
    std::unordered_set<BsrElement, BsrHash> bsr_;
    FurthestFailure failure_;
    EngineStats stats_;
};

ParseResult parse(const SlotTable& table, const LexTable& lex, std::string_view input,
                  const ParseOptions& opts = {});

}  // namespace pegll

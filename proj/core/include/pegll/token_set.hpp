// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <vector>

namespace pegll {

// Dense bitset over small token/nonterminal indices; the usual workhorse
// for nullable/FIRST fixpoints.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(int universe) : bits_((universe + 63) / 64, 0) {}

    void insert(int id) {
        grow(id);
        bits_[id >> 6] |= (uint64_t{1} << (id & 63));
    }

    bool contains(int id) const {
        int w = id >> 6;
        if (w < 0 || w >= static_cast<int>(bits_.size())) return false;
        return (bits_[w] >> (id & 63)) & 1;
    }

    // Set union; returns true if this set changed.
    bool merge(const IndexSet& other) {
        if (other.bits_.size() > bits_.size()) bits_.resize(other.bits_.size(), 0);
        bool changed = false;
        for (size_t w = 0; w < other.bits_.size(); ++w) {
            uint64_t next = bits_[w] | other.bits_[w];
            if (next != bits_[w]) {
                bits_[w] = next;
                changed = true;
            }
        }
        return changed;
    }

    bool empty() const {
        for (uint64_t w : bits_)
            if (w) return false;
        return true;
    }

    size_t size() const {
        size_t n = 0;
        for (uint64_t w : bits_) n += static_cast<size_t>(__builtin_popcountll(w));
        return n;
    }

    std::vector<int> values() const {
        std::vector<int> out;
        for (size_t w = 0; w < bits_.size(); ++w) {
            uint64_t bits = bits_[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                out.push_back(static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
        return out;
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) {
        size_t n = std::max(a.bits_.size(), b.bits_.size());
        for (size_t w = 0; w < n; ++w) {
            uint64_t wa = w < a.bits_.size() ? a.bits_[w] : 0;
            uint64_t wb = w < b.bits_.size() ? b.bits_[w] : 0;
            if (wa != wb) return false;
        }
        return true;
    }

private:
    void grow(int id) {
        size_t need = static_cast<size_t>(id / 64) + 1;
        if (bits_.size() < need) bits_.resize(need, 0);
    }

    std::vector<uint64_t> bits_;
};

using TokenSet = IndexSet;

}  // namespace pegll

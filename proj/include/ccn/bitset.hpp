#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ccn {

// Dense bit set over a fixed vertex universe [0, n).  Word-parallel set
// operations; bits at positions >= n are kept zero so whole-word ops and
// equality stay exact.  Cardinality is cached and maintained by every
// mutator.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(int universe) : nbits_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.mask_tail();
        s.count_ = universe;
        return s;
    }

    static VertexSet of(int universe, std::initializer_list<int> vs) {
        VertexSet s(universe);
        for (int v : vs) s.set(v);
        return s;
    }

    int universe_size() const { return nbits_; }
    int count() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool test(int v) const {
        assert(v >= 0 && v < nbits_);
        return (words_[v >> 6] >> (v & 63)) & 1u;
    }

    void set(int v) {
        assert(v >= 0 && v < nbits_);
        std::uint64_t& w = words_[v >> 6];
        std::uint64_t bit = std::uint64_t{1} << (v & 63);
        count_ += !(w & bit);
        w |= bit;
    }

    void reset(int v) {
        assert(v >= 0 && v < nbits_);
        std::uint64_t& w = words_[v >> 6];
        std::uint64_t bit = std::uint64_t{1} << (v & 63);
        count_ -= !!(w & bit);
        w &= ~bit;
    }

    void clear() {
        for (auto& w : words_) w = 0;
        count_ = 0;
    }

    VertexSet& operator&=(const VertexSet& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        recount();
        return *this;
    }

    VertexSet& operator|=(const VertexSet& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        recount();
        return *this;
    }

    // set difference
    VertexSet& operator-=(const VertexSet& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        recount();
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    bool intersects(const VertexSet& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    int intersection_count(const VertexSet& o) const {
        assert(nbits_ == o.nbits_);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    bool contains_all(const VertexSet& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (o.words_[i] & ~words_[i]) return false;
        return true;
    }

    // lowest member, -1 if empty
    int first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return int(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }

    // lowest member strictly greater than v, -1 if none
    int next_after(int v) const {
        int start = v + 1;
        if (start >= nbits_) return -1;
        std::size_t wi = start >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (start & 63));
        while (true) {
            if (w) return int(wi * 64 + std::countr_zero(w));
            if (++wi == words_.size()) return -1;
            w = words_[wi];
        }
    }

    // idx'th member in increasing order, idx in [0, count())
    int nth(int idx) const {
        assert(idx >= 0 && idx < count_);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            int c = std::popcount(words_[i]);
            if (idx < c) {
                std::uint64_t w = words_[i];
                while (idx--) w &= w - 1;
                return int(i * 64 + std::countr_zero(w));
            }
            idx -= c;
        }
        assert(false);
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(int(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count_);
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    bool operator==(const VertexSet& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }

    // words-lexicographic; a stable total order for sorting clique lists
    bool operator<(const VertexSet& o) const {
        assert(nbits_ == o.nbits_);
        return words_ < o.words_;
    }

private:
    void mask_tail() {
        int rem = nbits_ & 63;
        if (rem && !words_.empty()) words_.back() &= (~std::uint64_t{0}) >> (64 - rem);
    }

    void recount() {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        count_ = c;
    }

    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
    int count_ = 0;
};

} // namespace ccn

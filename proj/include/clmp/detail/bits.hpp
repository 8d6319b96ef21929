#ifndef CLMP_DETAIL_BITS_HPP
#define CLMP_DETAIL_BITS_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "clmp/node_set.hpp"

namespace clmp::detail {

// Two interchangeable bit-set representations over indices [0, n).
// Bits64 is the packed single-word fast path for graphs with at most 64
// nodes; BitsN is the general one. Algorithm kernels are templated on the
// representation and the two are differential-tested against each other.

class Bits64 {
public:
    static constexpr int max_size = 64;

    Bits64() = default;
    explicit Bits64(int n) : n_(n) {}

    void set(int i) { w_ |= (std::uint64_t{1} << i); }
    void reset(int i) { w_ &= ~(std::uint64_t{1} << i); }
    bool test(int i) const { return (w_ >> i) & 1u; }
    bool any() const { return w_ != 0; }
    int count() const { return std::popcount(w_); }
    void clear() { w_ = 0; }
    int size() const { return n_; }

    Bits64& operator|=(const Bits64& o) { w_ |= o.w_; return *this; }
    Bits64& operator&=(const Bits64& o) { w_ &= o.w_; return *this; }
    // a.and_not(b): remove b's members from a.
    Bits64& and_not(const Bits64& o) { w_ &= ~o.w_; return *this; }

    friend bool operator==(const Bits64& a, const Bits64& b) { return a.w_ == b.w_; }

    /// Lowest set index, or -1 when empty.
    int first() const { return w_ ? std::countr_zero(w_) : -1; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        std::uint64_t w = w_;
        while (w) {
            int i = std::countr_zero(w);
            fn(i);
            w &= w - 1;
        }
    }

private:
    std::uint64_t w_ = 0;
    int n_ = 0;
};

class BitsN {
public:
    static constexpr int max_size = 1 << 30;

    BitsN() = default;
    explicit BitsN(int n) : n_(n), ws_((n + 63) / 64, 0) {}

    void set(int i) { ws_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { ws_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (ws_[i >> 6] >> (i & 63)) & 1u; }

    bool any() const {
        for (auto w : ws_)
            if (w) return true;
        return false;
    }

    int count() const {
        int c = 0;
        for (auto w : ws_) c += std::popcount(w);
        return c;
    }

    void clear() { std::fill(ws_.begin(), ws_.end(), 0); }
    int size() const { return n_; }

    BitsN& operator|=(const BitsN& o) {
        for (std::size_t k = 0; k < ws_.size(); ++k) ws_[k] |= o.ws_[k];
        return *this;
    }

    BitsN& operator&=(const BitsN& o) {
        for (std::size_t k = 0; k < ws_.size(); ++k) ws_[k] &= o.ws_[k];
        return *this;
    }

    BitsN& and_not(const BitsN& o) {
        for (std::size_t k = 0; k < ws_.size(); ++k) ws_[k] &= ~o.ws_[k];
        return *this;
    }

    friend bool operator==(const BitsN& a, const BitsN& b) { return a.ws_ == b.ws_; }

    int first() const {
        for (std::size_t k = 0; k < ws_.size(); ++k)
            if (ws_[k]) return static_cast<int>(k << 6) + std::countr_zero(ws_[k]);
        return -1;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < ws_.size(); ++k) {
            std::uint64_t w = ws_[k];
            while (w) {
                int i = static_cast<int>(k << 6) + std::countr_zero(w);
                fn(i);
                w &= w - 1;
            }
        }
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> ws_;
};

template <typename Bits>
NodeSet bits_to_node_set(const Bits& b) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(b.count()));
    b.for_each([&](int i) { out.push_back(i); });
    return NodeSet::from_sorted_unique(std::move(out));
}

template <typename Bits>
Bits node_set_to_bits(const NodeSet& s, int n) {
    Bits b(n);
    for (int v : s) b.set(v);
    return b;
}

}  // namespace clmp::detail

#endif

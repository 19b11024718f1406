#ifndef HOMTW_BITSET_HPP
#define HOMTW_BITSET_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace homtw {

// Fixed-width dynamic bitset used for solver domains. Sized once, then
// mutated in place; all hot operations are word-parallel.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits, bool ones = false)
        : nbits_(nbits), words_((nbits + 63) / 64, ones ? ~std::uint64_t{0} : 0) {
        if (ones) trim();
    }

    int size_bits() const { return nbits_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void clear() { for (auto& w : words_) w = 0; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Index of the lowest set bit, or -1.
    int first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }

    // Lowest set bit strictly above i, or -1.
    int next(int i) const {
        ++i;
        if (i >= nbits_) return -1;
        std::size_t wi = static_cast<std::size_t>(i) >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return static_cast<int>(wi * 64 + std::countr_zero(w));
            if (++wi >= words_.size()) return -1;
            w = words_[wi];
        }
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    bool operator==(const Bitset& o) const {
        return nbits_ == o.nbits_ && words_ == o.words_;
    }

    // this &= o, reporting whether anything changed.
    bool intersect_changed(const Bitset& o) {
        bool changed = false;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t nw = words_[i] & o.words_[i];
            if (nw != words_[i]) { words_[i] = nw; changed = true; }
        }
        return changed;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<int>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

private:
    void trim() {
        int rem = nbits_ & 63;
        if (rem && !words_.empty())
            words_.back() &= (~std::uint64_t{0}) >> (64 - rem);
    }

    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace homtw

#endif

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sdr {

// Element set over a dense ground [0, capacity). Single-word storage for
// capacity <= 64 (the common case here), chunked words above that. The
// first word lives inline so small sets never touch the heap.
class ElemSet {
public:
    ElemSet() = default;

    explicit ElemSet(int capacity) : nbits_(capacity) {
        if (capacity < 0) throw std::invalid_argument("ElemSet: negative capacity");
        if (capacity > 64) hi_.assign((capacity - 1) / 64, 0);
    }

    int capacity() const { return nbits_; }
    int words() const { return 1 + static_cast<int>(hi_.size()); }

    bool test(int i) const {
        check(i);
        return (word(i >> 6) >> (i & 63)) & 1u;
    }

    void set(int i) {
        check(i);
        word(i >> 6) |= uint64_t{1} << (i & 63);
    }

    void reset(int i) {
        check(i);
        word(i >> 6) &= ~(uint64_t{1} << (i & 63));
    }

    int count() const {
        int c = std::popcount(w0_);
        for (uint64_t w : hi_) c += std::popcount(w);
        return c;
    }

    bool none() const {
        if (w0_) return false;
        for (uint64_t w : hi_)
            if (w) return false;
        return true;
    }

    bool intersects(const ElemSet& o) const {
        if (w0_ & o.w0_) return true;
        for (size_t k = 0; k < hi_.size() && k < o.hi_.size(); ++k)
            if (hi_[k] & o.hi_[k]) return true;
        return false;
    }

    // this is a superset of o
    bool contains_all(const ElemSet& o) const {
        if (o.w0_ & ~w0_) return false;
        for (size_t k = 0; k < o.hi_.size(); ++k)
            if (o.hi_[k] & ~(k < hi_.size() ? hi_[k] : 0)) return false;
        return true;
    }

    ElemSet& operator|=(const ElemSet& o) {
        w0_ |= o.w0_;
        for (size_t k = 0; k < o.hi_.size(); ++k) hi_[k] |= o.hi_[k];
        return *this;
    }

    ElemSet& operator&=(const ElemSet& o) {
        w0_ &= o.w0_;
        for (size_t k = 0; k < hi_.size(); ++k) hi_[k] &= (k < o.hi_.size() ? o.hi_[k] : 0);
        return *this;
    }

    // remove every element of o
    ElemSet& subtract(const ElemSet& o) {
        w0_ &= ~o.w0_;
        for (size_t k = 0; k < hi_.size() && k < o.hi_.size(); ++k) hi_[k] &= ~o.hi_[k];
        return *this;
    }

    friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }
    friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }

    friend bool operator==(const ElemSet& a, const ElemSet& b) {
        return a.nbits_ == b.nbits_ && a.w0_ == b.w0_ && a.hi_ == b.hi_;
    }

    // Order by integer value of the mask (word 0 = least significant).
    int compare(const ElemSet& o) const {
        for (int k = std::max(words(), o.words()) - 1; k >= 0; --k) {
            uint64_t a = k < words() ? word(k) : 0;
            uint64_t b = k < o.words() ? o.word(k) : 0;
            if (a != b) return a < b ? -1 : 1;
        }
        return 0;
    }

    // ascending element indices
    template <typename F>
    void for_each(F&& fn) const {
        for (int k = 0; k < words(); ++k) {
            uint64_t w = word(k);
            while (w) {
                fn(k * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    // low word, valid as the full mask whenever capacity <= 64
    uint64_t low_word() const { return w0_; }

private:
    void check(int i) const {
        if (i < 0 || i >= nbits_) throw std::out_of_range("ElemSet: index out of range");
    }

    uint64_t& word(int k) { return k == 0 ? w0_ : hi_[k - 1]; }
    uint64_t word(int k) const { return k == 0 ? w0_ : hi_[k - 1]; }

    int nbits_ = 0;
    uint64_t w0_ = 0;
    std::vector<uint64_t> hi_;
};

}  // namespace sdr

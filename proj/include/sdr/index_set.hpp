#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sdr {

// Subset of member indices [0, n), n <= 64.
struct IndexSet {
    uint64_t bits = 0;

    IndexSet() = default;
    explicit IndexSet(uint64_t b) : bits(b) {}

    static IndexSet full(int n) {
        if (n < 0 || n > 64) throw std::invalid_argument("IndexSet: n out of range");
        return IndexSet{n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1};
    }
    static IndexSet single(int i) { return IndexSet{uint64_t{1} << i}; }

    bool contains(int i) const { return (bits >> i) & 1u; }
    int count() const { return std::popcount(bits); }
    bool empty() const { return bits == 0; }

    IndexSet complement(int n) const { return IndexSet{full(n).bits & ~bits}; }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        uint64_t b = bits;
        while (b) {
            out.push_back(std::countr_zero(b));
            b &= b - 1;
        }
        return out;
    }

    friend IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet{a.bits & b.bits}; }
    friend IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet{a.bits | b.bits}; }
    friend bool operator==(IndexSet a, IndexSet b) { return a.bits == b.bits; }
    friend bool operator<(IndexSet a, IndexSet b) { return a.bits < b.bits; }
};

}  // namespace sdr

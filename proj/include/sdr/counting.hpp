#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sdr/bigcount.hpp"
#include "sdr/family.hpp"

namespace sdr {

struct SdrList {
    // each an n-tuple of pairwise-distinct element indices, tuple i-th
    // entry drawn from A_i; lexicographic order
    std::vector<std::vector<int>> sequences;
    bool truncated = false;
};

// Exact N(F): subset dynamic program over member-index sets, one pass per
// ground element. 64-bit fast path with overflow detection, arbitrary
// precision fallback.
BigCount count_sdr(const SetFamily& f);

// Low-level entry on raw incidence data: members[i] is the element mask of
// A_i (ground fits one word). Used by the family overload and by exhaustive
// drivers that do not want SetFamily construction in the loop.
BigCount count_sdr_masks(std::span<const uint64_t> members, int ground_size);

// Backtracking over members in index order, elements ascending; calls fn for
// every SDR until it returns false. Returns false iff some call returned
// false (enumeration stopped early).
bool for_each_sdr(const SetFamily& f, const std::function<bool(std::span<const int>)>& fn);

// The first `limit` SDRs in deterministic order; truncated is set iff more
// than `limit` exist. limit = 0 reports only the truncation status.
SdrList enumerate_sdrs(const SetFamily& f, long long limit);

// Number of SDRs of the mask family, capped at `cap` (stops early).
long long count_sdrs_capped_masks(std::span<const uint64_t> members, int ground_size, long long cap);

// Hall feasibility via augmenting-path bipartite matching, not counting.
bool has_sdr(const SetFamily& f);

}  // namespace sdr

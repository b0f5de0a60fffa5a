#include "sdr/counting.hpp"

#include <algorithm>
#include <stdexcept>

namespace sdr {

namespace {

// One pass per ground element x: for every member set S (descending, so a
// value written this pass is never reused as a source) and every i in
// I_x \ S, table[S + i] += table[S]. table[S] after k elements = number of
// ways to represent exactly the members in S by distinct elements among the
// first k. Answer: table[full].
bool count_u64(std::span<const IndexSet> incidence, int n, uint64_t& out) {
    const size_t size = size_t{1} << n;
    std::vector<uint64_t> table(size, 0);
    table[0] = 1;
    const uint64_t full = size - 1;
    for (const IndexSet& inc : incidence) {
        for (uint64_t s = full; s + 1 >= 1; --s) {
            uint64_t v = table[s];
            if (v == 0) {
                if (s == 0) break;
                continue;
            }
            uint64_t free = inc.bits & ~s;
            while (free) {
                uint64_t bit = free & (0 - free);
                if (__builtin_add_overflow(table[s | bit], v, &table[s | bit])) return false;
                free &= free - 1;
            }
            if (s == 0) break;
        }
    }
    out = table[full];
    return true;
}

BigCount count_big(std::span<const IndexSet> incidence, int n) {
    const size_t size = size_t{1} << n;
    std::vector<BigCount> table(size);
    table[0] = 1;
    const uint64_t full = size - 1;
    for (const IndexSet& inc : incidence) {
        for (uint64_t s = full; s + 1 >= 1; --s) {
            if (table[s].is_zero()) {
                if (s == 0) break;
                continue;
            }
            uint64_t free = inc.bits & ~s;
            while (free) {
                uint64_t bit = free & (0 - free);
                table[s | bit] += table[s];
                free &= free - 1;
            }
            if (s == 0) break;
        }
    }
    return table[full];
}

BigCount count_from_incidence(std::span<const IndexSet> incidence, int n) {
    if (n > 28) throw std::invalid_argument("count_sdr: member count too large for the subset table");
    uint64_t fast = 0;
    if (count_u64(incidence, n, fast)) return BigCount(fast);
    return count_big(incidence, n);
}

}  // namespace

BigCount count_sdr(const SetFamily& f) {
    std::vector<IndexSet> incidence;
    incidence.reserve(f.m());
    for (int x = 0; x < f.m(); ++x) incidence.push_back(f.member_indices(x));
    return count_from_incidence(incidence, f.n());
}

BigCount count_sdr_masks(std::span<const uint64_t> members, int ground_size) {
    const int n = static_cast<int>(members.size());
    std::vector<IndexSet> incidence(ground_size);
    for (int i = 0; i < n; ++i) {
        uint64_t w = members[i];
        while (w) {
            incidence[std::countr_zero(w)].bits |= uint64_t{1} << i;
            w &= w - 1;
        }
    }
    return count_from_incidence(incidence, n);
}

namespace {

bool enumerate_rec(const SetFamily& f, int depth, std::vector<int>& picked, ElemSet& used,
                   const std::function<bool(std::span<const int>)>& fn) {
    if (depth == f.n()) return fn(picked);
    bool keep_going = true;
    f.member(depth).for_each([&](int x) {
        if (!keep_going || used.test(x)) return;
        used.set(x);
        picked.push_back(x);
        keep_going = enumerate_rec(f, depth + 1, picked, used, fn);
        picked.pop_back();
        used.reset(x);
    });
    return keep_going;
}

}  // namespace

bool for_each_sdr(const SetFamily& f, const std::function<bool(std::span<const int>)>& fn) {
    std::vector<int> picked;
    picked.reserve(f.n());
    ElemSet used(f.m());
    return enumerate_rec(f, 0, picked, used, fn);
}

SdrList enumerate_sdrs(const SetFamily& f, long long limit) {
    if (limit < 0) throw std::invalid_argument("enumerate_sdrs: limit must be >= 0");
    SdrList out;
    for_each_sdr(f, [&](std::span<const int> tuple) {
        if (static_cast<long long>(out.sequences.size()) == limit) {
            out.truncated = true;
            return false;
        }
        out.sequences.emplace_back(tuple.begin(), tuple.end());
        return true;
    });
    return out;
}

long long count_sdrs_capped_masks(std::span<const uint64_t> members, int ground_size, long long cap) {
    const int n = static_cast<int>(members.size());
    long long found = 0;
    // iterative backtracking on raw masks
    std::vector<uint64_t> avail(n + 1, 0);
    std::vector<uint64_t> chosen(n, 0);
    int depth = 0;
    uint64_t used = 0;
    avail[0] = members.empty() ? 0 : members[0];
    (void)ground_size;
    if (n == 0 || cap <= 0) return 0;
    while (depth >= 0) {
        uint64_t& a = avail[depth];
        if (a == 0) {
            --depth;
            if (depth >= 0) used &= ~chosen[depth];
            continue;
        }
        uint64_t bit = a & (0 - a);
        a &= a - 1;
        if (depth == n - 1) {
            if (++found >= cap) return found;
            continue;
        }
        chosen[depth] = bit;
        used |= bit;
        ++depth;
        avail[depth] = members[depth] & ~used;
    }
    return found;
}

namespace {

bool try_augment(const SetFamily& f, int member, std::vector<int>& match_of_element,
                 std::vector<bool>& visited) {
    bool found = false;
    f.member(member).for_each([&](int x) {
        if (found || visited[x]) return;
        visited[x] = true;
        if (match_of_element[x] < 0 || try_augment(f, match_of_element[x], match_of_element, visited)) {
            match_of_element[x] = member;
            found = true;
        }
    });
    return found;
}

}  // namespace

bool has_sdr(const SetFamily& f) {
    std::vector<int> match_of_element(f.m(), -1);
    for (int i = 0; i < f.n(); ++i) {
        std::vector<bool> visited(f.m(), false);
        if (!try_augment(f, i, match_of_element, visited)) return false;
    }
    return true;
}

}  // namespace sdr

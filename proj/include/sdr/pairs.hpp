#pragma once

#include <optional>
#include <vector>

#include "sdr/bigcount.hpp"
#include "sdr/family.hpp"

namespace sdr {

// Classification of one element pair. A pair {x,y} is exclusive when some
// member separates x from y in both directions; an exclusive pair is
// saturated when a tight witness set I has I & I_x & I_y empty but meets
// both I_x \ I_y and I_y \ I_x.
struct PairReport {
    int x = 0;
    int y = 0;
    bool exclusive = false;
    bool saturated = false;
    std::optional<IndexSet> witness;  // present iff saturated
};

struct PairCensus {
    int nep = 0;                      // exclusive pairs
    int nsp = 0;                      // saturated pairs
    BigCount bound;                   // sum_{i<j} a_i a_j
    std::vector<PairReport> reports;  // all exclusive pairs, (x,y) lexicographic
    bool theorem_applicable = true;   // t >= 2
};

// Requires is_valued_family(f, t, a) and x != y. The witness is the first
// qualifying tight set in ascending mask order.
PairReport classify_pair(const SetFamily& f, int t, const Valuation& a, int x, int y);

PairCensus census(const SetFamily& f, int t, const Valuation& a);

struct DescentStep {
    SetFamily family;  // exchanged family, still valued with the same valuation
    PairReport pair;   // the unsaturated pair used, in the input family's indexing
};

// Applies the exchange on the lexicographically first unsaturated exclusive
// pair, if one exists. Requires t >= 2 and a valued family; the result is
// again valued and has strictly fewer SDRs.
std::optional<DescentStep> descent_step(const SetFamily& f, int t, const Valuation& a);

// sum_{i<j} a_i a_j
BigCount pair_bound(const Valuation& a);

}  // namespace sdr

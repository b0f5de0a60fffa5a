#include "sdr/pairs.hpp"

#include <stdexcept>

namespace sdr {

namespace {

PairReport classify_with(const SetFamily& f, const std::vector<TightSet>& tights, int x, int y) {
    PairReport rep;
    rep.x = x;
    rep.y = y;
    const int n = f.n();
    const IndexSet ix = f.member_indices(x);
    const IndexSet iy = f.member_indices(y);
    rep.exclusive = !(ix & iy.complement(n)).empty() && !(iy & ix.complement(n)).empty();
    if (!rep.exclusive) return rep;
    const uint64_t both = ix.bits & iy.bits;
    const uint64_t only_x = ix.bits & ~iy.bits;
    const uint64_t only_y = iy.bits & ~ix.bits;
    for (const TightSet& ts : tights) {  // ascending by mask
        const uint64_t I = ts.indices.bits;
        if ((I & both) == 0 && (I & only_x) != 0 && (I & only_y) != 0) {
            rep.saturated = true;
            rep.witness = ts.indices;
            break;
        }
    }
    return rep;
}

}  // namespace

PairReport classify_pair(const SetFamily& f, int t, const Valuation& a, int x, int y) {
    if (x == y) throw std::invalid_argument("classify_pair: x and y must differ");
    if (x < 0 || x >= f.m() || y < 0 || y >= f.m())
        throw std::invalid_argument("classify_pair: element out of range");
    return classify_with(f, tight_sets(f, t, a), x, y);
}

PairCensus census(const SetFamily& f, int t, const Valuation& a) {
    const auto tights = tight_sets(f, t, a);  // also enforces the valued precondition
    PairCensus out;
    out.bound = pair_bound(a);
    out.theorem_applicable = t >= 2;
    for (int x = 0; x < f.m(); ++x) {
        for (int y = x + 1; y < f.m(); ++y) {
            PairReport rep = classify_with(f, tights, x, y);
            if (!rep.exclusive) continue;
            ++out.nep;
            if (rep.saturated) ++out.nsp;
            out.reports.push_back(std::move(rep));
        }
    }
    return out;
}

std::optional<DescentStep> descent_step(const SetFamily& f, int t, const Valuation& a) {
    if (t < 2) throw std::invalid_argument("descent_step: requires t >= 2");
    const auto tights = tight_sets(f, t, a);
    for (int x = 0; x < f.m(); ++x) {
        for (int y = x + 1; y < f.m(); ++y) {
            PairReport rep = classify_with(f, tights, x, y);
            if (rep.exclusive && !rep.saturated)
                return DescentStep{exchange(f, x, y).family, std::move(rep)};
        }
    }
    return std::nullopt;
}

BigCount pair_bound(const Valuation& a) {
    BigCount total = 0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = i + 1; j < a.size(); ++j) total += BigCount(a[i]) * a[j];
    return total;
}

}  // namespace sdr

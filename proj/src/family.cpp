#include "sdr/family.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace sdr {

namespace {

constexpr int kMaxSubsetScanN = 24;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::optional<int> GroundMap::find(const std::string& lbl) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == lbl) return i;
    return std::nullopt;
}

Valuation::Valuation(std::vector<int> w) : a(std::move(w)) {
    for (int v : a) require(v >= 1, "valuation entries must be >= 1");
}

int Valuation::sum() const { return std::accumulate(a.begin(), a.end(), 0); }

SetFamily::SetFamily(int ground_size, std::vector<ElemSet> members, GroundMap ground)
    : m_(ground_size), members_(std::move(members)), ground_(std::move(ground)) {
    require(m_ >= 1, "ground size must be >= 1");
    require(!members_.empty(), "family must have at least one member");
    require(n() <= 64, "member count exceeds supported bound (64)");
    require(ground_.size() == m_, "label count must equal ground size");
    for (const auto& s : members_) {
        require(s.capacity() == m_, "member capacity mismatch");
        require(!s.none(), "member sets must be nonempty");
    }
    {
        std::vector<std::string> sorted = ground_.labels;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "ground labels must be pairwise distinct");
    }
    incidence_.assign(m_, IndexSet{});
    for (int i = 0; i < n(); ++i)
        members_[i].for_each([&](int x) { incidence_[x].bits |= uint64_t{1} << i; });
    for (int x = 0; x < m_; ++x)
        require(!incidence_[x].empty(), "ground set must equal the union of the members");
}

IndexSet SetFamily::member_indices(int x) const {
    if (x < 0 || x >= m_) throw std::out_of_range("element index out of range");
    return incidence_[x];
}

SetFamily make_family(int ground_size, const std::vector<std::vector<int>>& members,
                      std::vector<std::string> labels) {
    if (labels.empty()) {
        labels.reserve(ground_size);
        for (int x = 0; x < ground_size; ++x) labels.push_back(std::to_string(x + 1));
    }
    std::vector<ElemSet> sets;
    sets.reserve(members.size());
    for (const auto& mem : members) {
        ElemSet s(ground_size);
        for (int x : mem) s.set(x);
        sets.push_back(std::move(s));
    }
    return SetFamily(ground_size, std::move(sets), GroundMap{std::move(labels)});
}

ElemSet union_mask(const SetFamily& f, IndexSet I) {
    require(!I.empty(), "union over empty index set");
    require((I.bits & ~f.full_index_set().bits) == 0, "index set out of range");
    ElemSet u(f.m());
    uint64_t b = I.bits;
    while (b) {
        u |= f.member(std::countr_zero(b));
        b &= b - 1;
    }
    return u;
}

int union_size(const SetFamily& f, IndexSet I) { return union_mask(f, I).count(); }

std::vector<int> all_union_sizes(const SetFamily& f) {
    const int n = f.n();
    require(n <= kMaxSubsetScanN, "subset scan infeasible for this many members");
    // unions[I] built from unions[I minus lowest bit]
    std::vector<ElemSet> unions(size_t{1} << n, ElemSet(f.m()));
    std::vector<int> sizes(size_t{1} << n, 0);
    for (uint64_t I = 1; I < (uint64_t{1} << n); ++I) {
        unions[I] = unions[I & (I - 1)] | f.member(std::countr_zero(I));
        sizes[I] = unions[I].count();
    }
    return sizes;
}

bool is_t_family(const SetFamily& f, int t) {
    require(t >= 0, "t must be nonnegative");
    const int n = f.n();
    require(n <= kMaxSubsetScanN, "subset scan infeasible for this many members");
    std::vector<ElemSet> unions(size_t{1} << n, ElemSet(f.m()));
    for (uint64_t I = 1; I < (uint64_t{1} << n); ++I) {
        unions[I] = unions[I & (I - 1)] | f.member(std::countr_zero(I));
        if (unions[I].count() < std::popcount(I) + t) return false;
    }
    return true;
}

bool is_valued_family(const SetFamily& f, int t, const Valuation& a) {
    require(t >= 0, "t must be nonnegative");
    require(a.size() == f.n(), "valuation length mismatch");
    for (int i = 0; i < f.n(); ++i)
        if (f.member(i).count() != a[i] + t) return false;
    if (f.n() == 1) return true;
    const int n = f.n();
    require(n <= kMaxSubsetScanN, "subset scan infeasible for this many members");
    std::vector<ElemSet> unions(size_t{1} << n, ElemSet(f.m()));
    std::vector<int> wsum(size_t{1} << n, 0);
    for (uint64_t I = 1; I < (uint64_t{1} << n); ++I) {
        int i = std::countr_zero(I);
        unions[I] = unions[I & (I - 1)] | f.member(i);
        wsum[I] = wsum[I & (I - 1)] + a[i];
        if (std::popcount(I) >= 2 && unions[I].count() < wsum[I] + t) return false;
    }
    return true;
}

SetFamily construct_star(int t, int n) {
    require(t >= 0, "t must be nonnegative");
    require(n >= 1, "n must be >= 1");
    std::vector<std::vector<int>> members(n);
    for (int i = 0; i < n; ++i) {
        members[i].push_back(i);
        for (int s = 0; s < t; ++s) members[i].push_back(n + s);
    }
    return make_family(n + t, members);
}

SetFamily construct_bar(int t, const Valuation& a) {
    require(t >= 0, "t must be nonnegative");
    require(a.size() >= 1, "valuation must be nonempty");
    const int total = a.sum() + t;
    std::vector<std::vector<int>> members(a.size());
    int offset = 0;
    for (int i = 0; i < a.size(); ++i) {
        for (int b = 0; b < a[i]; ++b) members[i].push_back(offset + b);
        for (int s = 0; s < t; ++s) members[i].push_back(a.sum() + s);
        offset += a[i];
    }
    return make_family(total, members);
}

bool is_bar_family(const SetFamily& f, int t, const Valuation& a) {
    require(t >= 0, "t must be nonnegative");
    require(a.size() == f.n(), "valuation length mismatch");
    for (int i = 0; i < f.n(); ++i)
        if (f.member(i).count() != a[i] + t) return false;
    if (f.n() == 1) return true;
    ElemSet common = f.member(0) & f.member(1);
    if (common.count() != t) return false;
    ElemSet privates(f.m());
    int private_total = 0;
    for (int i = 0; i < f.n(); ++i) {
        if (!f.member(i).contains_all(common)) return false;
        ElemSet priv = f.member(i);
        priv.subtract(common);
        private_total += priv.count();
        privates |= priv;
    }
    // disjoint private blocks: the union of the privates has full size
    return privates.count() == private_total;
}

ExchangeResult exchange(const SetFamily& f, int x, int y) {
    require(x != y, "exchange requires distinct elements");
    if (x < 0 || x >= f.m() || y < 0 || y >= f.m())
        throw std::out_of_range("element not in ground set");
    const IndexSet moves = f.member_indices(x) & f.member_indices(y).complement(f.n());
    const bool drop_x = (f.member_indices(x) & f.member_indices(y)).empty() && !moves.empty();

    std::vector<int> element_map(f.m());
    int next = 0;
    for (int e = 0; e < f.m(); ++e) element_map[e] = (drop_x && e == x) ? -1 : next++;
    const int new_m = drop_x ? f.m() - 1 : f.m();

    GroundMap ground;
    ground.labels.reserve(new_m);
    for (int e = 0; e < f.m(); ++e)
        if (element_map[e] >= 0) ground.labels.push_back(f.label(e));

    std::vector<ElemSet> members;
    members.reserve(f.n());
    for (int i = 0; i < f.n(); ++i) {
        ElemSet s(new_m);
        f.member(i).for_each([&](int e) {
            if (moves.contains(i) && e == x) return;
            s.set(element_map[e]);
        });
        if (moves.contains(i)) s.set(element_map[y]);
        members.push_back(std::move(s));
    }
    return ExchangeResult{SetFamily(new_m, std::move(members), std::move(ground)), std::move(element_map),
                          drop_x};
}

std::vector<TightSet> tight_sets(const SetFamily& f, int t, const Valuation& a) {
    require(is_valued_family(f, t, a), "tight_sets requires a valued (t,n)-family");
    std::vector<TightSet> out;
    if (f.n() == 1) return out;
    const int n = f.n();
    std::vector<ElemSet> unions(size_t{1} << n, ElemSet(f.m()));
    std::vector<int> wsum(size_t{1} << n, 0);
    for (uint64_t I = 1; I < (uint64_t{1} << n); ++I) {
        int i = std::countr_zero(I);
        unions[I] = unions[I & (I - 1)] | f.member(i);
        wsum[I] = wsum[I & (I - 1)] + a[i];
        if (std::popcount(I) >= 2) {
            int u = unions[I].count();
            if (u == wsum[I] + t) out.push_back(TightSet{IndexSet{I}, u});
        }
    }
    return out;  // ascending by mask by construction
}

std::vector<IndexSet> equivalence_classes(const SetFamily& f, int t, const Valuation& a) {
    const auto tights = tight_sets(f, t, a);
    std::vector<int> parent(f.n());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& ts : tights) {
        auto idx = ts.indices.to_indices();
        for (size_t k = 1; k < idx.size(); ++k) parent[find(idx[0])] = find(idx[k]);
    }
    std::map<int, IndexSet> classes;
    for (int i = 0; i < f.n(); ++i) classes[find(i)].bits |= uint64_t{1} << i;
    std::vector<IndexSet> out;
    std::map<int, IndexSet> by_least;
    for (auto& [root, cls] : classes) by_least[std::countr_zero(cls.bits)] = cls;
    for (auto& [least, cls] : by_least) out.push_back(cls);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical form: lexicographic minimization of the incidence matrix over
// ground relabelings and weight-preserving member permutations. Rows are
// placed one at a time; an ordered partition of the columns (refined by each
// placed row) captures exactly the relabeling freedom that remains, so a
// candidate row's minimal emission is decided by its intersection counts per
// block. Branches on ties, prunes on the accumulated prefix versus the best
// complete form.
// ---------------------------------------------------------------------------

namespace {

struct CanonState {
    const SetFamily* f;
    std::vector<int> weights;                // weight per member position
    std::vector<std::vector<int>> blocks;    // ordered column partition
    std::vector<bool> used;
    std::string emitted;                     // '0'/'1' rows, m chars each
    std::string best;
    bool have_best = false;
};

void canon_dfs(CanonState& st, int depth) {
    const int n = st.f->n();
    const int m = st.f->m();
    if (depth == n) {
        if (!st.have_best || st.emitted < st.best) {
            st.best = st.emitted;
            st.have_best = true;
        }
        return;
    }
    if (st.have_best) {
        // emitted so far is a strict prefix of any completion
        if (st.emitted.compare(0, st.emitted.size(), st.best, 0, st.emitted.size()) > 0) return;
    }

    // minimal emission per candidate row: within each block, zeros first
    std::string best_row;
    std::vector<int> chosen;
    for (int r = 0; r < n; ++r) {
        if (st.used[r] || st.weights[r] != st.weights[depth]) continue;
        std::string row;
        row.reserve(m);
        for (const auto& blk : st.blocks) {
            int ones = 0;
            for (int c : blk) ones += st.f->member(r).test(c);
            row.append(blk.size() - ones, '0');
            row.append(ones, '1');
        }
        if (chosen.empty() || row < best_row) {
            best_row = std::move(row);
            chosen.assign(1, r);
        } else if (row == best_row) {
            chosen.push_back(r);
        }
    }

    const size_t mark = st.emitted.size();
    for (int r : chosen) {
        std::vector<std::vector<int>> saved = st.blocks;
        std::vector<std::vector<int>> refined;
        for (auto& blk : st.blocks) {
            std::vector<int> zeros, ones;
            for (int c : blk) (st.f->member(r).test(c) ? ones : zeros).push_back(c);
            if (!zeros.empty()) refined.push_back(std::move(zeros));
            if (!ones.empty()) refined.push_back(std::move(ones));
        }
        st.blocks = std::move(refined);
        st.used[r] = true;
        st.emitted += best_row;
        canon_dfs(st, depth + 1);
        st.emitted.resize(mark);
        st.used[r] = false;
        st.blocks = std::move(saved);
    }
}

}  // namespace

std::string canonical_form(const SetFamily& f, const Valuation* weights) {
    if (weights) require(weights->size() == f.n(), "valuation length mismatch");
    CanonState st;
    st.f = &f;
    st.weights.assign(f.n(), 0);
    if (weights)
        for (int i = 0; i < f.n(); ++i) st.weights[i] = (*weights)[i];
    st.blocks.assign(1, std::vector<int>(f.m()));
    std::iota(st.blocks[0].begin(), st.blocks[0].end(), 0);
    st.used.assign(f.n(), false);
    canon_dfs(st, 0);

    std::string header = "n=" + std::to_string(f.n()) + ";m=" + std::to_string(f.m()) + ";w=";
    for (int i = 0; i < f.n(); ++i) {
        if (i) header += ',';
        header += std::to_string(st.weights[i]);
    }
    header += ';';
    std::string body;
    for (int r = 0; r < f.n(); ++r) {
        if (r) body += '|';
        body.append(st.best, size_t(r) * f.m(), f.m());
    }
    return header + body;
}

SetFamily relabel(const SetFamily& f, const std::vector<int>& perm) {
    require(static_cast<int>(perm.size()) == f.m(), "permutation size mismatch");
    std::vector<bool> seen(f.m(), false);
    for (int p : perm) {
        require(p >= 0 && p < f.m() && !seen[p], "not a permutation");
        seen[p] = true;
    }
    GroundMap ground;
    ground.labels.assign(f.m(), {});
    for (int x = 0; x < f.m(); ++x) ground.labels[perm[x]] = f.label(x);
    std::vector<ElemSet> members;
    members.reserve(f.n());
    for (int i = 0; i < f.n(); ++i) {
        ElemSet s(f.m());
        f.member(i).for_each([&](int x) { s.set(perm[x]); });
        members.push_back(std::move(s));
    }
    return SetFamily(f.m(), std::move(members), std::move(ground));
}

SetFamily reorder_members(const SetFamily& f, const std::vector<int>& order) {
    require(static_cast<int>(order.size()) == f.n(), "order size mismatch");
    std::vector<ElemSet> members;
    members.reserve(f.n());
    for (int i : order) members.push_back(f.member(i));
    return SetFamily(f.m(), std::move(members), f.ground());
}

}  // namespace sdr

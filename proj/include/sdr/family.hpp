#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdr/bitset.hpp"
#include "sdr/index_set.hpp"

namespace sdr {

// External labels for the dense ground indices. labels[i] is the label of
// element i; index is the exact inverse.
struct GroundMap {
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(labels.size()); }
    const std::string& label(int x) const { return labels.at(x); }
    std::optional<int> find(const std::string& lbl) const;
};

// Positive integer weights attached to member positions.
struct Valuation {
    std::vector<int> a;

    Valuation() = default;
    explicit Valuation(std::vector<int> w);

    int size() const { return static_cast<int>(a.size()); }
    int sum() const;
    int operator[](int i) const { return a[i]; }

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

// A family F = (A_1, ..., A_n) of nonempty subsets of a dense ground
// [0, m). The ground is always exactly the union of the members: parsing
// assigns indices in first-occurrence order and every constructor checks
// that no element is dangling. Immutable after construction.
class SetFamily {
public:
    // members as element-index lists; ground labels for [0, m)
    SetFamily(int ground_size, std::vector<ElemSet> members, GroundMap ground);

    int n() const { return static_cast<int>(members_.size()); }
    int m() const { return m_; }
    const ElemSet& member(int i) const { return members_.at(i); }
    const std::vector<ElemSet>& members() const { return members_; }
    const GroundMap& ground() const { return ground_; }
    const std::string& label(int x) const { return ground_.label(x); }

    // I_x = indices of members containing x; deg x = |I_x|
    IndexSet member_indices(int x) const;
    int degree(int x) const { return member_indices(x).count(); }

    IndexSet full_index_set() const { return IndexSet::full(n()); }

private:
    int m_ = 0;
    std::vector<ElemSet> members_;
    GroundMap ground_;
    std::vector<IndexSet> incidence_;  // per element
};

// Convenience builder: members given by element index lists, labels
// defaulting to "1".."m".
SetFamily make_family(int ground_size, const std::vector<std::vector<int>>& members,
                      std::vector<std::string> labels = {});

// |union of A_i over i in I|. I must be nonempty.
int union_size(const SetFamily& f, IndexSet I);
ElemSet union_mask(const SetFamily& f, IndexSet I);

// Union sizes for every subset of members, indexed by member mask.
// Subset-scan workhorse; n is capped so the table stays desk-scale.
std::vector<int> all_union_sizes(const SetFamily& f);

// |union over I| >= |I| + t for every nonempty I
bool is_t_family(const SetFamily& f, int t);

// |A_i| = a_i + t for all i, and |union over I| >= sum_I a_i + t for all
// |I| >= 2. For n = 1 only the size condition applies.
bool is_valued_family(const SetFamily& f, int t, const Valuation& a);

// A_i = {i} + a shared block of t extra elements; labels "1".."n+t".
SetFamily construct_star(int t, int n);

// Pairwise-disjoint private blocks B_i (|B_i| = a_i) plus one common
// t-element block T; A_i = B_i + T. Labels "1".."sum(a)+t".
SetFamily construct_bar(int t, const Valuation& a);

// |A_i| = a_i + t and one t-set T with A_i & A_j = T for all i != j.
// For n = 1 just the size condition.
bool is_bar_family(const SetFamily& f, int t, const Valuation& a);

struct ExchangeResult {
    SetFamily family;
    // old element index -> new index, -1 where dropped
    std::vector<int> element_map;
    bool dropped_x = false;
};

// Members containing x but not y get x replaced by y; if x loses all
// memberships it is dropped from the ground (dense reindex recorded).
ExchangeResult exchange(const SetFamily& f, int x, int y);

struct TightSet {
    IndexSet indices;  // |indices| >= 2
    int union_size = 0;

    friend bool operator==(const TightSet&, const TightSet&) = default;
};

// All I with |I| >= 2 and |union over I| = sum_I a_i + t, ascending by
// index-set mask. Requires is_valued_family(f, t, a).
std::vector<TightSet> tight_sets(const SetFamily& f, int t, const Valuation& a);

// Partition of member indices: union-find over tight sets, singletons for
// indices in no tight set. Classes sorted by least member.
std::vector<IndexSet> equivalence_classes(const SetFamily& f, int t, const Valuation& a);

// Canonical byte sequence, invariant under ground relabeling and member
// permutation within equal-weight groups (all members one group when no
// valuation is given). Equal bytes iff isomorphic under those symmetries.
std::string canonical_form(const SetFamily& f, const Valuation* weights = nullptr);

// Ground relabeling: element x becomes perm[x] (labels travel with the
// elements). perm must be a permutation of [0, m).
SetFamily relabel(const SetFamily& f, const std::vector<int>& perm);

// Member reordering: position i takes old member order[i].
SetFamily reorder_members(const SetFamily& f, const std::vector<int>& order);

}  // namespace sdr

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sdr/bigcount.hpp"
#include "sdr/family.hpp"

namespace sdr {

struct SearchSpec {
    int t = 0;
    Valuation a;
    // max ground size; defaults to sum(a_i + t), the largest union any
    // family with the forced member sizes can have
    int ground_cap = -1;
    bool collect_minimizers = false;

    // resource budgets, 0 = unlimited; budgeted runs are sequential
    long long max_families = 0;
    long long max_millis = 0;

    int jobs = 1;
    std::function<void(const std::string&)> progress;  // one line per shard

    int resolved_cap() const;
};

struct SearchReport {
    BigCount minimum;
    BigCount closed_form;
    std::vector<std::string> minimizers;  // canonical forms, collect mode only
    int minimizer_class_count = 0;
    long long families_scanned = 0;    // complete valued families examined
    long long canonical_classes = 0;   // one representative per class
    bool unique_bar = false;
    bool complete = true;
};

// Every valued (t,n)-family with valuation a over grounds of size <=
// ground_cap, exactly one representative per isomorphism class (ground
// relabeling + weight-preserving member permutation), in lexicographic
// order of the representative's member masks. Return false from the
// callback to stop.
void enumerate_families(const SearchSpec& spec, const std::function<bool(const SetFamily&)>& fn);

// Folds count_sdr over enumerate_families, tracking the minimum and the
// classes attaining it. An aborted run reports complete = false and never
// claims unique_bar.
SearchReport verify_theorem4(const SearchSpec& spec);

struct DescentProbeReport {
    int samples_requested = 0;
    int samples_generated = 0;
    int sampling_failures = 0;
    long long total_steps = 0;
    int max_steps = 0;
    // all zero on a healthy run
    int step_count_violations = 0;       // a step failed to strictly decrease N(F)
    int step_validity_violations = 0;    // a step left the valued universe
    int fixpoint_unsaturated_mismatches = 0;  // fixpoint census with nep != nsp
    int fixpoint_bound_violations = 0;        // fixpoint with NEP < sum a_i a_j
    uint64_t seed = 0;
};

// Random valued families (rejection sampling of sorted random subsets),
// descended to a fixpoint. Fully reproducible from the seed. Requires
// t >= 2.
DescentProbeReport descent_probe(const SearchSpec& spec, int samples, uint64_t seed);

}  // namespace sdr

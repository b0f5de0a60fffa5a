#include "sdr/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>

#include "sdr/counting.hpp"
#include "sdr/closed_forms.hpp"
#include "sdr/pairs.hpp"

namespace sdr {
namespace {

uint64_t low_mask(int k) {
    return k >= 64 ? ~0ull : (1ull << k) - 1;
}

// lowest c set bits of m
uint64_t lowest_bits(uint64_t m, int c) {
    uint64_t r = 0;
    while (c-- > 0) {
        uint64_t b = m & (~m + 1);
        r |= b;
        m ^= b;
    }
    return r;
}

/*
 * Orderly generation of valued families up to isomorphism.
 *
 * Members are placed one at a time as bitmasks over the ground.  Labels are
 * assigned on first occurrence, so after placing a prefix the used labels
 * are exactly [0, u).  Two pruning rules keep exactly one representative
 * per isomorphism class:
 *
 *  1. Block-leftmost candidates.  The labels interchangeable under the
 *     stabilizer of the placed prefix form an ordered partition into
 *     blocks; a new member must take the lowest labels inside every block
 *     it meets, and brand-new labels are the next unused ones.  This makes
 *     each prefix the lexicographic minimum over pure relabelings.
 *
 *  2. Orbit test.  For every weight-preserving permutation of the placed
 *     member positions, relabel the permuted sequence greedily to its
 *     lexicographic minimum; if any image sorts strictly below the placed
 *     prefix, prune.  Both properties are hereditary, so a pruned prefix
 *     loses no classes.
 */
struct Generator {
    int n, t, cap;
    std::vector<int> sizes;    // a_i + t
    std::vector<int> weights;  // a_i
    bool any_equal_weights = false;

    std::vector<uint64_t> masks;   // placed members
    std::vector<uint64_t> blocks;  // partition of [0, u) into label masks
    int used = 0;

    // subset tables over placed positions, indexed by position mask
    std::vector<uint64_t> umask;
    std::vector<int> wsum;

    std::function<bool(std::span<const uint64_t>, int)> emit;
    bool stopped = false;

    explicit Generator(const SearchSpec& spec)
        : n(spec.a.size()), t(spec.t), cap(spec.resolved_cap()) {
        for (int i = 0; i < n; ++i) {
            sizes.push_back(spec.a[i] + t);
            weights.push_back(spec.a[i]);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (weights[i] == weights[j]) any_equal_weights = true;
        umask.assign(size_t{1} << n, 0);
        wsum.assign(size_t{1} << n, 0);
    }

    // Lexicographically minimal relabeling of (masks[tau[0]], ...,
    // masks[tau[k]]), compared against the placed prefix as it is built.
    // Returns <0 if the image is smaller, 0 if equal, >0 if larger.
    int compare_image(const std::vector<int>& tau) const {
        int k = static_cast<int>(tau.size());
        std::vector<uint64_t> blk = {low_mask(used)};
        std::vector<uint64_t> next;
        for (int j = 0; j < k; ++j) {
            uint64_t src = masks[tau[j]];
            uint64_t img = 0;
            int pos = 0;
            next.clear();
            for (uint64_t b : blk) {
                int c = std::popcount(src & b);
                img |= low_mask(c) << pos;
                pos += std::popcount(b);
                if (c > 0) next.push_back(src & b);
                if (uint64_t rest = b & ~src) next.push_back(rest);
            }
            if (img != masks[j]) return img < masks[j] ? -1 : 1;
            blk.swap(next);
        }
        return 0;
    }

    // true if the placed prefix is minimal within its orbit under
    // weight-preserving position permutations
    bool prefix_canonical(int k) const {
        if (!any_equal_weights) return true;
        // positions sharing a weight value, wherever they sit
        std::vector<std::pair<int, std::vector<int>>> groups;
        for (int i = 0; i < k; ++i) {
            auto it = std::find_if(groups.begin(), groups.end(),
                                   [&](const auto& g) { return g.first == weights[i]; });
            if (it != groups.end())
                it->second.push_back(i);
            else
                groups.push_back({weights[i], {i}});
        }
        std::vector<int> tau(k);
        for (int i = 0; i < k; ++i) tau[i] = i;
        bool ok = true;
        // product of per-group permutations, recursively
        auto walk = [&](auto&& self, size_t g, bool identity) -> void {
            if (!ok) return;
            if (g == groups.size()) {
                if (!identity && compare_image(tau) < 0) ok = false;
                return;
            }
            std::vector<int>& pos = groups[g].second;
            std::vector<int> perm = pos;
            do {
                for (size_t i = 0; i < pos.size(); ++i) tau[pos[i]] = perm[i];
                self(self, g + 1, identity && perm == pos);
            } while (ok && std::next_permutation(perm.begin(), perm.end()));
            for (size_t i = 0; i < pos.size(); ++i) tau[pos[i]] = pos[i];
        };
        walk(walk, 0, true);
        return ok;
    }

    // candidate masks for member `depth`, ascending
    std::vector<uint64_t> candidates(int depth) const {
        std::vector<uint64_t> out;
        int want = sizes[depth];
        auto rec = [&](auto&& self, size_t bi, int left, uint64_t acc) -> void {
            if (bi == blocks.size()) {
                if (used + left <= cap)
                    out.push_back(acc | (low_mask(left) << used));
                return;
            }
            int most = std::min(left, std::popcount(blocks[bi]));
            for (int c = 0; c <= most; ++c)
                self(self, bi + 1, left - c, acc | lowest_bits(blocks[bi], c));
        };
        rec(rec, 0, want, 0);
        std::sort(out.begin(), out.end());
        return out;
    }

    // union-size constraints against every earlier subset; fills the
    // subset tables for masks containing bit `depth` as a side effect
    bool admissible(int depth, uint64_t cand) {
        uint64_t hi = 1ull << depth;
        for (uint64_t lo = 0; lo < hi; ++lo) {
            umask[lo | hi] = umask[lo] | cand;
            wsum[lo | hi] = wsum[lo] + weights[depth];
            if (lo != 0 && std::popcount(umask[lo | hi]) < wsum[lo | hi] + t)
                return false;
        }
        return true;
    }

    void place(int depth, uint64_t cand) {
        masks.push_back(cand);
        std::vector<uint64_t> next;
        for (uint64_t b : blocks) {
            if (uint64_t in = b & cand) next.push_back(in);
            if (uint64_t out = b & ~cand) next.push_back(out);
        }
        if (uint64_t fresh = cand & ~low_mask(used)) {
            next.push_back(fresh);
            used += std::popcount(fresh);
        }
        blocks.swap(next);
    }

    void dfs(int depth) {
        if (stopped) return;
        if (depth == n) {
            if (!emit(std::span<const uint64_t>(masks), used)) stopped = true;
            return;
        }
        for (uint64_t cand : candidates(depth)) {
            if (!admissible(depth, cand)) continue;
            auto saved_blocks = blocks;
            int saved_used = used;
            place(depth, cand);
            if (prefix_canonical(depth + 1)) dfs(depth + 1);
            masks.pop_back();
            blocks = std::move(saved_blocks);
            used = saved_used;
            if (stopped) return;
        }
    }

    // replay a fixed prefix (already known admissible and canonical)
    bool replay(std::span<const uint64_t> prefix) {
        for (size_t d = 0; d < prefix.size(); ++d) {
            if (!admissible(static_cast<int>(d), prefix[d])) return false;
            place(static_cast<int>(d), prefix[d]);
        }
        return true;
    }

    void run() { dfs(0); }
};

void check_spec(const SearchSpec& spec) {
    if (spec.t < 0) throw std::invalid_argument("t must be nonnegative");
    if (spec.a.size() == 0) throw std::invalid_argument("valuation must be nonempty");
    int least = 0;
    for (int i = 0; i < spec.a.size(); ++i) least += spec.a[i];
    least += spec.t;
    if (spec.ground_cap >= 0 && spec.ground_cap < least)
        throw std::invalid_argument("ground_cap below sum(a_i) + t admits no valued family");
    if (spec.resolved_cap() > 64)
        throw std::invalid_argument("search is limited to ground sizes up to 64");
}

SetFamily family_from_masks(std::span<const uint64_t> masks, int used) {
    std::vector<ElemSet> members;
    for (uint64_t m : masks) {
        ElemSet s(used);
        for (int x = 0; x < used; ++x)
            if (m >> x & 1) s.set(x);
        members.push_back(std::move(s));
    }
    std::vector<std::string> labels;
    for (int x = 0; x < used; ++x) labels.push_back(std::to_string(x + 1));
    return SetFamily(used, std::move(members), GroundMap{std::move(labels)});
}

// shared by enumerate_families and verify_theorem4: run the generator,
// splitting the tree at depth 2 when parallelism is requested
struct ShardPlan {
    std::vector<std::vector<uint64_t>> prefixes;  // canonical admissible prefixes
    int depth = 0;                                // length of each prefix
};

ShardPlan plan_shards(const SearchSpec& spec) {
    ShardPlan plan;
    int depth = std::min<int>(2, spec.a.size());
    plan.depth = depth;
    Generator g(spec);
    // reuse the generator but stop at the shard depth
    auto collect = [&](auto&& self, int d) -> void {
        if (d == depth) {
            plan.prefixes.push_back(g.masks);
            return;
        }
        for (uint64_t cand : g.candidates(d)) {
            if (!g.admissible(d, cand)) continue;
            auto saved_blocks = g.blocks;
            int saved_used = g.used;
            g.place(d, cand);
            if (g.prefix_canonical(d + 1)) self(self, d + 1);
            g.masks.pop_back();
            g.blocks = std::move(saved_blocks);
            g.used = saved_used;
        }
    };
    collect(collect, 0);
    return plan;
}

// everything a shard learns; merged in shard order for determinism
struct ShardResult {
    bool has_any = false;
    BigCount minimum;
    int min_classes = 0;
    std::string first_min_canonical;
    std::vector<std::string> min_canonicals;  // collect mode
    long long scanned = 0;
    long long classes = 0;
};

ShardResult run_shard(const SearchSpec& spec, std::span<const uint64_t> prefix) {
    ShardResult r;
    Generator g(spec);
    if (!g.replay(prefix)) return r;
    g.emit = [&](std::span<const uint64_t> masks, int used) {
        ++r.scanned;
        ++r.classes;
        BigCount count = count_sdr_masks(masks, used);
        if (!r.has_any || count < r.minimum) {
            r.has_any = true;
            r.minimum = count;
            r.min_classes = 0;
            r.min_canonicals.clear();
            r.first_min_canonical.clear();
        }
        if (count == r.minimum) {
            ++r.min_classes;
            SetFamily f = family_from_masks(masks, used);
            std::string canon = canonical_form(f, &spec.a);
            if (r.first_min_canonical.empty()) r.first_min_canonical = canon;
            if (spec.collect_minimizers) r.min_canonicals.push_back(std::move(canon));
        }
        return true;
    };
    g.dfs(static_cast<int>(prefix.size()));
    return r;
}

}  // namespace

int SearchSpec::resolved_cap() const {
    // no union can exceed sum |A_i| = sum (a_i + t)
    int full = 0;
    for (int i = 0; i < a.size(); ++i) full += a[i] + t;
    if (ground_cap < 0) return full;
    return std::min(ground_cap, full);
}

void enumerate_families(const SearchSpec& spec, const std::function<bool(const SetFamily&)>& fn) {
    check_spec(spec);
    Generator g(spec);
    g.emit = [&](std::span<const uint64_t> masks, int used) {
        return fn(family_from_masks(masks, used));
    };
    g.run();
}

SearchReport verify_theorem4(const SearchSpec& spec) {
    check_spec(spec);
    SearchReport report;
    report.closed_form = valued_U(spec.t, spec.a);

    bool budgeted = spec.max_families > 0 || spec.max_millis > 0;
    int jobs = budgeted ? 1 : std::max(1, spec.jobs);
    auto started = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        if (spec.max_millis <= 0) return false;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started);
        return ms.count() >= spec.max_millis;
    };

    ShardPlan plan = plan_shards(spec);
    std::vector<ShardResult> results(plan.prefixes.size());

    if (jobs <= 1) {
        for (size_t i = 0; i < plan.prefixes.size(); ++i) {
            if (budgeted) {
                // budgets need a live cutoff, so rebuild the shard loop
                // with checks inside the emit callback
                ShardResult& r = results[i];
                Generator g(spec);
                if (!g.replay(plan.prefixes[i])) continue;
                g.emit = [&](std::span<const uint64_t> masks, int used) {
                    if (spec.max_families > 0 && report.families_scanned + r.scanned >= spec.max_families) {
                        report.complete = false;
                        return false;
                    }
                    if (out_of_time()) {
                        report.complete = false;
                        return false;
                    }
                    ++r.scanned;
                    ++r.classes;
                    BigCount count = count_sdr_masks(masks, used);
                    if (!r.has_any || count < r.minimum) {
                        r.has_any = true;
                        r.minimum = count;
                        r.min_classes = 0;
                        r.min_canonicals.clear();
                        r.first_min_canonical.clear();
                    }
                    if (count == r.minimum) {
                        ++r.min_classes;
                        SetFamily f = family_from_masks(masks, used);
                        std::string canon = canonical_form(f, &spec.a);
                        if (r.first_min_canonical.empty()) r.first_min_canonical = canon;
                        if (spec.collect_minimizers) r.min_canonicals.push_back(std::move(canon));
                    }
                    return true;
                };
                g.dfs(static_cast<int>(plan.prefixes[i].size()));
                report.families_scanned += r.scanned;
                if (spec.progress)
                    spec.progress("shard " + std::to_string(i + 1) + "/" +
                                  std::to_string(plan.prefixes.size()) + " done, " +
                                  std::to_string(r.scanned) + " families");
                if (!report.complete) break;
            } else {
                results[i] = run_shard(spec, plan.prefixes[i]);
                report.families_scanned += results[i].scanned;
                if (spec.progress)
                    spec.progress("shard " + std::to_string(i + 1) + "/" +
                                  std::to_string(plan.prefixes.size()) + " done, " +
                                  std::to_string(results[i].scanned) + " families");
            }
        }
    } else {
        std::mutex mx;
        size_t next = 0;
        auto worker = [&] {
            for (;;) {
                size_t i;
                {
                    std::lock_guard<std::mutex> lock(mx);
                    if (next >= plan.prefixes.size()) return;
                    i = next++;
                }
                ShardResult r = run_shard(spec, plan.prefixes[i]);
                {
                    std::lock_guard<std::mutex> lock(mx);
                    if (spec.progress)
                        spec.progress("shard " + std::to_string(i + 1) + "/" +
                                      std::to_string(plan.prefixes.size()) + " done, " +
                                      std::to_string(r.scanned) + " families");
                    results[i] = std::move(r);
                }
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        for (const ShardResult& r : results) report.families_scanned += r.scanned;
    }

    // deterministic merge in shard order
    bool has_any = false;
    for (const ShardResult& r : results) {
        if (!r.has_any) continue;
        if (!has_any || r.minimum < report.minimum) {
            has_any = true;
            report.minimum = r.minimum;
        }
    }
    std::string first_min_canonical;
    for (const ShardResult& r : results) {
        report.canonical_classes += r.classes;
        if (!r.has_any || r.minimum != report.minimum) continue;
        report.minimizer_class_count += r.min_classes;
        if (first_min_canonical.empty()) first_min_canonical = r.first_min_canonical;
        for (const std::string& c : r.min_canonicals) report.minimizers.push_back(c);
    }

    if (!has_any) {
        report.complete = false;
        return report;
    }
    if (report.complete && report.minimizer_class_count == 1) {
        SetFamily bar = construct_bar(spec.t, spec.a);
        report.unique_bar = first_min_canonical == canonical_form(bar, &spec.a);
    }
    return report;
}

DescentProbeReport descent_probe(const SearchSpec& spec, int samples, uint64_t seed) {
    check_spec(spec);
    if (spec.t < 2) throw std::invalid_argument("descent probe requires t >= 2");
    DescentProbeReport report;
    report.samples_requested = samples;
    report.seed = seed;

    int n = spec.a.size();
    int cap = spec.resolved_cap();
    std::mt19937_64 rng(seed);
    auto draw = [&](int bound) { return static_cast<int>(rng() % static_cast<uint64_t>(bound)); };

    std::vector<int> pool(cap);
    for (int sample = 0; sample < samples; ++sample) {
        bool found = false;
        std::vector<uint64_t> masks(n);
        for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
            for (int i = 0; i < n; ++i) {
                // partial Fisher-Yates: first size_i entries become the member
                for (int x = 0; x < cap; ++x) pool[x] = x;
                int size = spec.a[i] + spec.t;
                uint64_t m = 0;
                for (int j = 0; j < size; ++j) {
                    int k = j + draw(cap - j);
                    std::swap(pool[j], pool[k]);
                    m |= 1ull << pool[j];
                }
                masks[i] = m;
            }
            found = true;
            for (uint64_t sub = 3; sub < (1ull << n) && found; ++sub) {
                if (std::popcount(sub) < 2) continue;
                uint64_t u = 0;
                int w = 0;
                for (int i = 0; i < n; ++i)
                    if (sub >> i & 1) {
                        u |= masks[i];
                        w += spec.a[i];
                    }
                if (std::popcount(u) < w + spec.t) found = false;
            }
        }
        if (!found) {
            ++report.sampling_failures;
            continue;
        }
        ++report.samples_generated;

        // compact the ground to the union before building the family
        uint64_t all = 0;
        for (uint64_t m : masks) all |= m;
        std::vector<int> dense(cap, -1);
        int used = 0;
        for (int x = 0; x < cap; ++x)
            if (all >> x & 1) dense[x] = used++;
        std::vector<uint64_t> packed(n, 0);
        for (int i = 0; i < n; ++i)
            for (int x = 0; x < cap; ++x)
                if (masks[i] >> x & 1) packed[i] |= 1ull << dense[x];

        SetFamily f = family_from_masks(packed, used);
        BigCount count = count_sdr(f);
        int steps = 0;
        for (;;) {
            auto step = descent_step(f, spec.t, spec.a);
            if (!step) break;
            ++steps;
            if (!is_valued_family(step->family, spec.t, spec.a))
                ++report.step_validity_violations;
            BigCount after = count_sdr(step->family);
            if (!(after < count)) ++report.step_count_violations;
            count = std::move(after);
            f = std::move(step->family);
            if (steps > 100000) {  // should be unreachable: counts strictly decrease
                ++report.step_count_violations;
                break;
            }
        }
        report.total_steps += steps;
        report.max_steps = std::max(report.max_steps, steps);

        PairCensus fixpoint = census(f, spec.t, spec.a);
        if (fixpoint.nep != fixpoint.nsp) ++report.fixpoint_unsaturated_mismatches;
        if (fixpoint.nep < fixpoint.bound) ++report.fixpoint_bound_violations;
    }
    return report;
}

}  // namespace sdr

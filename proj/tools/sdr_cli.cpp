// Command-line front end. Every subcommand reads/writes one JSON document:
// results go to stdout wrapped in {"status": ..., "payload": ...}, human
// diagnostics to stderr. Exit codes: 0 ok, 1 domain error, 2 usage error,
// 3 incomplete search.
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdr/closed_forms.hpp"
#include "sdr/counting.hpp"
#include "sdr/family.hpp"
#include "sdr/json_io.hpp"
#include "sdr/pairs.hpp"
#include "sdr/search.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace sdr;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Accept a bare family document, or one nested in our own output
// ({"status":..,"payload":{..}} or a transform payload's "family") so
// subcommands compose under a shell pipe.
FamilyDocument load_family(const std::string& path) {
    std::string text = read_input(path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("family document: ") + e.what());
    }
    const ordered_json* at = &doc;
    for (int depth = 0; depth < 3 && at->is_object() && !at->contains("sets"); ++depth) {
        if (at->contains("payload"))
            at = &(*at)["payload"];
        else if (at->contains("family"))
            at = &(*at)["family"];
        else
            break;
    }
    return parse_family(at->dump());
}

ordered_json family_json(const FamilyDocument& doc) {
    return ordered_json::parse(serialize_family(doc));
}

int resolve_t(std::optional<int> flag, const FamilyDocument& doc) {
    if (flag) return *flag;
    if (doc.t) return *doc.t;
    throw std::invalid_argument("no t given: pass --t or put \"t\" in the family file");
}

Valuation resolve_valuation(const std::vector<int>& flag, const FamilyDocument& doc) {
    if (!flag.empty()) return Valuation(flag);
    if (doc.valuation) return *doc.valuation;
    throw std::invalid_argument(
        "no valuation given: pass --valuation or put \"valuation\" in the family file");
}

int emit(const std::string& status, const ordered_json& payload, int code) {
    ordered_json out;
    out["status"] = status;
    out["payload"] = payload;
    std::cout << out.dump() << "\n";
    return code;
}

int emit_ok(const ordered_json& payload) { return emit("ok", payload, 0); }

int find_label(const SetFamily& f, const std::string& lbl, const char* what) {
    auto x = f.ground().find(lbl);
    if (!x) throw std::invalid_argument(std::string(what) + " label \"" + lbl + "\" not in the ground");
    return *x;
}

ordered_json census_json(const SetFamily& f, const PairCensus& c) {
    ordered_json out;
    out["nep"] = c.nep;
    out["nsp"] = c.nsp;
    out["bound"] = to_decimal(c.bound);
    out["theorem_applicable"] = c.theorem_applicable;
    ordered_json pairs = ordered_json::array();
    for (const PairReport& r : c.reports) {
        ordered_json p;
        p["x"] = f.label(r.x);
        p["y"] = f.label(r.y);
        p["exclusive"] = r.exclusive;
        p["saturated"] = r.saturated;
        if (r.witness) p["witness"] = r.witness->to_indices();
        pairs.push_back(std::move(p));
    }
    out["pairs"] = std::move(pairs);
    return out;
}

ordered_json search_json(const SearchSpec& spec, const SearchReport& r, uint64_t seed,
                         bool representatives) {
    ordered_json out;
    out["minimum"] = to_decimal(r.minimum);
    out["closed_form"] = to_decimal(r.closed_form);
    out["families_scanned"] = r.families_scanned;
    out["canonical_classes"] = r.canonical_classes;
    out["minimizer_class_count"] = r.minimizer_class_count;
    out["unique_bar"] = r.unique_bar;
    out["complete"] = r.complete;
    out["seed"] = seed;
    if (spec.collect_minimizers) out["minimizers"] = r.minimizers;
    if (representatives) {
        // re-derive one concrete family per minimizing class
        std::set<std::string> wanted(r.minimizers.begin(), r.minimizers.end());
        ordered_json reps = ordered_json::array();
        enumerate_families(spec, [&](const SetFamily& f) {
            if (count_sdr(f) != r.minimum) return true;
            auto it = wanted.find(canonical_form(f, &spec.a));
            if (it == wanted.end()) return true;
            wanted.erase(it);
            reps.push_back(family_json(FamilyDocument{f, spec.t, spec.a}));
            return !wanted.empty();
        });
        out["representatives"] = std::move(reps);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorics of systems of distinct representatives"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- count ----
    auto* cmd_count = app.add_subcommand("count", "number of SDRs of a family");
    auto count_file = std::make_shared<std::string>();
    cmd_count->add_option("family-file", *count_file, "family JSON file, - for stdin")->required();
    cmd_count->callback([=, &exit_code] {
        FamilyDocument doc = load_family(*count_file);
        ordered_json payload;
        payload["n_sdr"] = to_decimal(count_sdr(doc.family));
        exit_code = emit_ok(payload);
    });

    // ---- enumerate ----
    auto* cmd_enum = app.add_subcommand("enumerate", "list SDRs in lexicographic order");
    auto enum_file = std::make_shared<std::string>();
    auto enum_limit = std::make_shared<long long>(0);
    cmd_enum->add_option("family-file", *enum_file)->required();
    cmd_enum->add_option("--limit", *enum_limit, "maximum SDRs to list")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_enum->callback([=, &exit_code] {
        FamilyDocument doc = load_family(*enum_file);
        SdrList list = enumerate_sdrs(doc.family, *enum_limit);
        ordered_json seqs = ordered_json::array();
        for (const auto& tuple : list.sequences) {
            ordered_json one = ordered_json::array();
            for (int x : tuple) one.push_back(doc.family.label(x));
            seqs.push_back(std::move(one));
        }
        ordered_json payload;
        payload["sequences"] = std::move(seqs);
        payload["truncated"] = list.truncated;
        exit_code = emit_ok(payload);
    });

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "(t,n)-family and valued-family predicates");
    auto verify_file = std::make_shared<std::string>();
    auto verify_t = std::make_shared<int>(0);
    auto verify_val = std::make_shared<std::vector<int>>();
    cmd_verify->add_option("family-file", *verify_file)->required();
    auto* verify_t_opt = cmd_verify->add_option("--t", *verify_t, "required surplus t");
    cmd_verify->add_option("--valuation", *verify_val, "weights a_1 .. a_n");
    cmd_verify->callback([=, &exit_code] {
        FamilyDocument doc = load_family(*verify_file);
        int t = resolve_t(*verify_t_opt ? std::optional<int>(*verify_t) : std::nullopt, doc);
        ordered_json payload;
        payload["is_t_family"] = is_t_family(doc.family, t);
        if (!verify_val->empty() || doc.valuation) {
            Valuation a = resolve_valuation(*verify_val, doc);
            payload["is_valued"] = is_valued_family(doc.family, t, a);
        }
        exit_code = emit_ok(payload);
    });

    // ---- pairs ----
    auto* cmd_pairs = app.add_subcommand("pairs", "exclusive/saturated pair census");
    auto pairs_file = std::make_shared<std::string>();
    auto pairs_t = std::make_shared<int>(0);
    auto pairs_val = std::make_shared<std::vector<int>>();
    cmd_pairs->add_option("family-file", *pairs_file)->required();
    auto* pairs_t_opt = cmd_pairs->add_option("--t", *pairs_t);
    cmd_pairs->add_option("--valuation", *pairs_val);
    cmd_pairs->callback([=, &exit_code] {
        FamilyDocument doc = load_family(*pairs_file);
        int t = resolve_t(*pairs_t_opt ? std::optional<int>(*pairs_t) : std::nullopt, doc);
        Valuation a = resolve_valuation(*pairs_val, doc);
        PairCensus c = census(doc.family, t, a);
        exit_code = emit_ok(census_json(doc.family, c));
    });

    // ---- transform ----
    auto* cmd_tf = app.add_subcommand("transform", "exchange x -> y and tight-set union deltas");
    auto tf_file = std::make_shared<std::string>();
    auto tf_x = std::make_shared<std::string>();
    auto tf_y = std::make_shared<std::string>();
    auto tf_t = std::make_shared<int>(0);
    auto tf_val = std::make_shared<std::vector<int>>();
    cmd_tf->add_option("family-file", *tf_file)->required();
    cmd_tf->add_option("--x", *tf_x, "element label to remove")->required();
    cmd_tf->add_option("--y", *tf_y, "element label to add")->required();
    auto* tf_t_opt = cmd_tf->add_option("--t", *tf_t);
    cmd_tf->add_option("--valuation", *tf_val);
    cmd_tf->callback([=, &exit_code] {
        FamilyDocument doc = load_family(*tf_file);
        int x = find_label(doc.family, *tf_x, "--x");
        int y = find_label(doc.family, *tf_y, "--y");
        ExchangeResult res = exchange(doc.family, x, y);
        ordered_json payload;
        payload["family"] = family_json(FamilyDocument{res.family, doc.t, doc.valuation});
        payload["dropped_x"] = res.dropped_x;
        payload["element_map"] = res.element_map;
        // union-size deltas need the valued structure; skip when unknown
        bool have_t = *tf_t_opt || doc.t;
        bool have_val = !tf_val->empty() || doc.valuation;
        if (have_t && have_val) {
            int t = resolve_t(*tf_t_opt ? std::optional<int>(*tf_t) : std::nullopt, doc);
            Valuation a = resolve_valuation(*tf_val, doc);
            ordered_json deltas = ordered_json::array();
            for (const TightSet& ts : tight_sets(doc.family, t, a)) {
                int before = ts.union_size;
                int after = union_size(res.family, ts.indices);
                ordered_json d;
                d["indices"] = ts.indices.to_indices();
                d["before"] = before;
                d["after"] = after;
                d["delta"] = after - before;
                deltas.push_back(std::move(d));
            }
            payload["tight_deltas"] = std::move(deltas);
        }
        exit_code = emit_ok(payload);
    });

    // ---- classes ----
    auto* cmd_cls = app.add_subcommand("classes", "tight sets and their equivalence classes");
    auto cls_file = std::make_shared<std::string>();
    auto cls_t = std::make_shared<int>(0);
    auto cls_val = std::make_shared<std::vector<int>>();
    cmd_cls->add_option("family-file", *cls_file)->required();
    auto* cls_t_opt = cmd_cls->add_option("--t", *cls_t);
    cmd_cls->add_option("--valuation", *cls_val);
    cmd_cls->callback([=, &exit_code] {
        FamilyDocument doc = load_family(*cls_file);
        int t = resolve_t(*cls_t_opt ? std::optional<int>(*cls_t) : std::nullopt, doc);
        Valuation a = resolve_valuation(*cls_val, doc);
        ordered_json payload;
        ordered_json classes = ordered_json::array();
        for (const IndexSet& cls : equivalence_classes(doc.family, t, a))
            classes.push_back(cls.to_indices());
        payload["classes"] = std::move(classes);
        ordered_json tights = ordered_json::array();
        for (const TightSet& ts : tight_sets(doc.family, t, a)) {
            ordered_json one;
            one["indices"] = ts.indices.to_indices();
            one["union_size"] = ts.union_size;
            tights.push_back(std::move(one));
        }
        payload["tight_sets"] = std::move(tights);
        exit_code = emit_ok(payload);
    });

    // ---- formula ----
    auto* cmd_formula = app.add_subcommand("formula", "closed forms U(t,n) and U'(t,a)");
    auto f_t = std::make_shared<int>(0);
    auto f_n = std::make_shared<int>(0);
    auto f_val = std::make_shared<std::vector<int>>();
    cmd_formula->add_option("--t", *f_t)->required();
    auto* f_n_opt = cmd_formula->add_option("--n", *f_n, "member count (all-ones valuation)");
    auto* f_val_opt = cmd_formula->add_option("--valuation", *f_val);
    f_n_opt->excludes(f_val_opt);
    cmd_formula->callback([=, &exit_code] {
        ordered_json payload;
        if (*f_n_opt)
            payload["value"] = to_decimal(chang_U(*f_t, *f_n));
        else if (!f_val->empty())
            payload["value"] = to_decimal(valued_U(*f_t, Valuation(*f_val)));
        else
            throw CLI::RequiredError("formula: one of --n or --valuation");
        exit_code = emit_ok(payload);
    });

    // ---- construct ----
    auto* cmd_make = app.add_subcommand("construct", "build the extremal families");
    cmd_make->require_subcommand(1);
    auto* cmd_star = cmd_make->add_subcommand("star", "A_i = {i} + common t-block");
    auto star_t = std::make_shared<int>(0);
    auto star_n = std::make_shared<int>(0);
    cmd_star->add_option("--t", *star_t)->required();
    cmd_star->add_option("--n", *star_n)->required();
    cmd_star->callback([=, &exit_code] {
        SetFamily f = construct_star(*star_t, *star_n);
        Valuation ones(std::vector<int>(static_cast<size_t>(*star_n), 1));
        exit_code = emit_ok(family_json(FamilyDocument{f, *star_t, ones}));
    });
    auto* cmd_bar = cmd_make->add_subcommand("bar", "disjoint private blocks + common t-block");
    auto bar_t = std::make_shared<int>(0);
    auto bar_val = std::make_shared<std::vector<int>>();
    cmd_bar->add_option("--t", *bar_t)->required();
    cmd_bar->add_option("--valuation", *bar_val)->required();
    cmd_bar->callback([=, &exit_code] {
        Valuation a(*bar_val);
        SetFamily f = construct_bar(*bar_t, a);
        exit_code = emit_ok(family_json(FamilyDocument{f, *bar_t, a}));
    });

    // ---- search ----
    auto* cmd_search = app.add_subcommand("search", "exhaust the valued universe, track the minimum");
    auto s_t = std::make_shared<int>(0);
    auto s_val = std::make_shared<std::vector<int>>();
    auto s_cap = std::make_shared<int>(-1);
    auto s_collect = std::make_shared<bool>(false);
    auto s_jobs = std::make_shared<int>(1);
    auto s_seed = std::make_shared<uint64_t>(0);
    auto s_max_fam = std::make_shared<long long>(0);
    auto s_max_ms = std::make_shared<long long>(0);
    auto s_reps = std::make_shared<bool>(false);
    cmd_search->add_option("--t", *s_t)->required();
    cmd_search->add_option("--valuation", *s_val)->required();
    cmd_search->add_option("--ground-cap", *s_cap, "ground size cap (default sum(a_i + t))");
    cmd_search->add_flag("--collect", *s_collect, "keep all minimizer canonical forms");
    cmd_search->add_option("--jobs", *s_jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd_search->add_option("--seed", *s_seed, "echoed into the report; search itself is deterministic");
    cmd_search->add_option("--max-families", *s_max_fam, "abort incomplete after this many families");
    cmd_search->add_option("--max-millis", *s_max_ms, "abort incomplete after this wall time");
    cmd_search->add_flag("--representatives", *s_reps, "re-derive one family per minimizing class");
    cmd_search->callback([=, &exit_code] {
        SearchSpec spec;
        spec.t = *s_t;
        spec.a = Valuation(*s_val);
        spec.ground_cap = *s_cap;
        spec.collect_minimizers = *s_collect || *s_reps;
        spec.jobs = *s_jobs;
        spec.max_families = *s_max_fam;
        spec.max_millis = *s_max_ms;
        spec.progress = [](const std::string& line) { std::cerr << line << "\n"; };
        SearchReport report = verify_theorem4(spec);
        ordered_json payload = search_json(spec, report, *s_seed, *s_reps && report.complete);
        if (!report.complete)
            exit_code = emit("incomplete", payload, 3);
        else
            exit_code = emit_ok(payload);
    });

    // ---- descent ----
    auto* cmd_descent = app.add_subcommand("descent", "random descent probe to fixpoints");
    auto d_t = std::make_shared<int>(0);
    auto d_val = std::make_shared<std::vector<int>>();
    auto d_samples = std::make_shared<int>(0);
    auto d_seed = std::make_shared<uint64_t>(0);
    auto d_cap = std::make_shared<int>(-1);
    cmd_descent->add_option("--t", *d_t)->required();
    cmd_descent->add_option("--valuation", *d_val)->required();
    cmd_descent->add_option("--samples", *d_samples)->required()->check(CLI::PositiveNumber);
    cmd_descent->add_option("--seed", *d_seed)->required();
    cmd_descent->add_option("--ground-cap", *d_cap);
    cmd_descent->callback([=, &exit_code] {
        SearchSpec spec;
        spec.t = *d_t;
        spec.a = Valuation(*d_val);
        spec.ground_cap = *d_cap;
        DescentProbeReport r = descent_probe(spec, *d_samples, *d_seed);
        ordered_json payload;
        payload["samples_requested"] = r.samples_requested;
        payload["samples_generated"] = r.samples_generated;
        payload["sampling_failures"] = r.sampling_failures;
        payload["total_steps"] = r.total_steps;
        payload["max_steps"] = r.max_steps;
        payload["step_count_violations"] = r.step_count_violations;
        payload["step_validity_violations"] = r.step_validity_violations;
        payload["fixpoint_unsaturated_mismatches"] = r.fixpoint_unsaturated_mismatches;
        payload["fixpoint_bound_violations"] = r.fixpoint_bound_violations;
        payload["seed"] = r.seed;
        exit_code = emit_ok(payload);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << R"({"status":"error"})" << "\n";
        return 1;
    }
    return exit_code;
}

// Drives the installed binary through a shell, checking stdout documents
// and exit codes. Usage: cli_checks <path-to-sdr-binary>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

using json = nlohmann::json;

namespace {

int failures = 0;

struct Run {
    int rc = -1;
    std::string out;
};

Run run(const std::string& cmd) {
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        std::cerr << "popen failed: " << cmd << "\n";
        ++failures;
        return r;
    }
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int st = pclose(p);
    r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAILED: " << what << "\n";
    }
}

json payload_of(const Run& r, const std::string& what) {
    try {
        json doc = json::parse(r.out);
        expect(doc.contains("status"), what + ": status field");
        return doc.value("payload", json::object());
    } catch (const std::exception& e) {
        ++failures;
        std::cerr << "FAILED: " << what << ": bad JSON: " << e.what() << "\n";
        return json::object();
    }
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/sdrcli_" + std::to_string(getpid()) + "_" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: cli_checks <sdr-binary>\n";
        return 2;
    }
    std::string sdr = argv[1];

    // documented examples
    Run f23 = run(sdr + " formula --t 2 --n 3 2>/dev/null");
    expect(f23.rc == 0, "formula exit code");
    expect(payload_of(f23, "formula")["value"] == "13", "formula --t 2 --n 3 is 13");

    Run star_count = run(sdr + " construct star --t 2 --n 2 2>/dev/null | " + sdr + " count - 2>/dev/null");
    expect(payload_of(star_count, "count")["n_sdr"] == "7", "count of star(2,2) is 7");

    Run deep = run(sdr + " search --t 3 --valuation 1 1 2>/dev/null");
    expect(deep.rc == 0, "search exit code");
    json deep_payload = payload_of(deep, "search");
    expect(deep_payload["minimum"] == "13", "search t=3 minimum 13");
    expect(deep_payload["unique_bar"] == true, "search t=3 unique bar");

    // formula --n N must match the all-ones valuation for t,n <= 8
    for (int t = 0; t <= 8 && failures == 0; ++t)
        for (int n = 1; n <= 8; ++n) {
            std::string val;
            for (int i = 0; i < n; ++i) val += " 1";
            Run by_n = run(sdr + " formula --t " + std::to_string(t) + " --n " + std::to_string(n) +
                           " 2>/dev/null");
            Run by_val = run(sdr + " formula --t " + std::to_string(t) + " --valuation" + val +
                             " 2>/dev/null");
            expect(payload_of(by_n, "formula n")["value"] == payload_of(by_val, "formula val")["value"],
                   "formula n/valuation agreement at t=" + std::to_string(t) +
                       " n=" + std::to_string(n));
        }

    // count of any construct equals the formula
    for (std::string val : {"1 1", "2 1", "2 2 1"}) {
        Run built = run(sdr + " construct bar --t 2 --valuation " + val + " 2>/dev/null | " + sdr +
                        " count - 2>/dev/null");
        Run direct = run(sdr + " formula --t 2 --valuation " + val + " 2>/dev/null");
        expect(payload_of(built, "count bar")["n_sdr"] == payload_of(direct, "formula")["value"],
               "bar count equals formula for a = " + val);
    }

    // construct piped into pairs: nep = nsp = sum of weight products
    Run paired = run(sdr + " construct bar --t 2 --valuation 2 1 2>/dev/null | " + sdr +
                     " pairs - 2>/dev/null");
    json pj = payload_of(paired, "pairs");
    expect(pj["nep"] == 2 && pj["nsp"] == 2 && pj["bound"] == "2", "bar(2,(2,1)) census 2/2/2");

    // enumerate truncation and verbatim labels
    std::string fam = write_temp("fam.json", R"({"sets":[["x y","q"],["q","z"]]})");
    Run listed = run(sdr + " enumerate " + fam + " --limit 10 2>/dev/null");
    json lj = payload_of(listed, "enumerate");
    expect(lj["truncated"] == false, "enumerate complete");
    expect(lj["sequences"].size() == 3, "enumerate count");
    expect(lj["sequences"][0][0] == "x y", "labels pass through verbatim");
    Run cut = run(sdr + " enumerate " + fam + " --limit 1 2>/dev/null");
    expect(payload_of(cut, "enumerate cut")["truncated"] == true, "enumerate truncates");

    // verify: flags win over file metadata
    std::string star2 = run(sdr + " construct star --t 2 --n 2 2>/dev/null").out;
    std::string starfile = write_temp("star.json", star2);
    Run vmeta = run(sdr + " verify " + starfile + " 2>/dev/null");
    json vm = payload_of(vmeta, "verify meta");
    expect(vm["is_t_family"] == true && vm["is_valued"] == true, "verify from metadata");
    Run vflag = run(sdr + " verify " + starfile + " --t 3 2>/dev/null");
    expect(payload_of(vflag, "verify flag")["is_t_family"] == false, "verify --t overrides file");

    // transform drops an orphaned x and reports the tight-set delta
    Run tf = run(sdr + " construct bar --t 2 --valuation 1 1 2>/dev/null | " + sdr +
                 " transform - --x 1 --y 2 2>/dev/null");
    json tj = payload_of(tf, "transform");
    expect(tj["dropped_x"] == true, "transform drops x");
    expect(tj["tight_deltas"][0]["delta"] == -1, "transform tight delta");
    expect(tj["family"]["sets"][0] == tj["family"]["sets"][1], "transform merges the members");

    // classes document
    Run cls = run(sdr + " construct bar --t 2 --valuation 1 1 1 2>/dev/null | " + sdr +
                  " classes - 2>/dev/null");
    json cj = payload_of(cls, "classes");
    expect(cj["classes"].size() == 1 && cj["classes"][0].size() == 3, "bar collapses to one class");
    expect(cj["tight_sets"].size() == 4, "tight sets of bar(2,1^3)");

    // search budget: incomplete report, exit 3
    Run budget = run(sdr + " search --t 2 --valuation 1 1 1 --max-families 2 2>/dev/null");
    expect(budget.rc == 3, "budgeted search exit 3");
    expect(budget.out.find("\"incomplete\"") != std::string::npos, "budgeted search status");
    expect(budget.out.find("\"unique_bar\":false") != std::string::npos,
           "incomplete search never claims uniqueness");

    // --jobs must not change output bytes
    Run one = run(sdr + " search --t 2 --valuation 1 1 1 --collect 2>/dev/null");
    Run four = run(sdr + " search --t 2 --valuation 1 1 1 --collect --jobs 4 2>/dev/null");
    expect(one.out == four.out, "search output independent of --jobs");

    // representatives rebuild concrete minimizers
    Run reps_doc = run(sdr + " search --t 2 --valuation 2 1 --representatives 2>/dev/null");
    json rj = payload_of(reps_doc, "representatives");
    expect(rj["representatives"].size() == 1, "one minimizing class");
    std::string rep = write_temp("rep.json", rj["representatives"][0].dump());
    Run rep_count = run(sdr + " count " + rep + " 2>/dev/null");
    expect(payload_of(rep_count, "rep count")["n_sdr"] == "10", "representative attains the minimum");

    // descent determinism
    Run d1 = run(sdr + " descent --t 2 --valuation 1 1 --samples 40 --seed 5 2>/dev/null");
    Run d2 = run(sdr + " descent --t 2 --valuation 1 1 --samples 40 --seed 5 2>/dev/null");
    expect(d1.rc == 0 && d1.out == d2.out, "descent reproducible for a fixed seed");
    json dj = payload_of(d1, "descent");
    expect(dj["step_count_violations"] == 0 && dj["step_validity_violations"] == 0,
           "descent clean");

    // error paths
    expect(run(sdr + " bogus 2>/dev/null").rc == 2, "unknown subcommand exits 2");
    expect(run(sdr + " count 2>/dev/null").rc == 2, "missing argument exits 2");
    expect(run(sdr + " count --bogus x 2>/dev/null").rc == 2, "unknown flag exits 2");
    expect(run(sdr + " formula --t 2 2>/dev/null").rc == 2, "formula without n or valuation exits 2");
    expect(run(sdr + " formula --t 2 --n 2 --valuation 1 1 2>/dev/null").rc == 2,
           "formula with both n and valuation exits 2");
    Run nofile = run(sdr + " count /does/not/exist 2>/dev/null");
    expect(nofile.rc == 1, "unreadable file exits 1");
    expect(nofile.out.find("\"error\"") != std::string::npos, "error status document");
    expect(run(sdr + " descent --t 1 --valuation 1 1 --samples 1 --seed 1 2>/dev/null").rc == 1,
           "descent below t=2 exits 1");
    std::string bad = write_temp("bad.json", R"({"sets":[[]]})");
    expect(run(sdr + " count " + bad + " 2>/dev/null").rc == 1, "malformed family exits 1");
    expect(run(sdr + " --help 2>/dev/null").rc == 0, "help exits 0");
    expect(run(sdr + " search --t 2 --valuation 1 1 --ground-cap 3 2>/dev/null").rc == 1,
           "impossible ground cap exits 1");

    if (failures == 0) {
        std::cout << "cli checks: all passed\n";
        return 0;
    }
    std::cerr << "cli checks: " << failures << " failure(s)\n";
    return 1;
}

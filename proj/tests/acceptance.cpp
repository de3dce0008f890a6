// Acceptance suite: one pass/fail line per criterion.  Exit code is the
// number of failed criteria.
//
// Run from the repository root (data files are loaded by relative path).

#include <chrono>
#include <cstdio>
#include <random>
#include <thread>

#include "unav/proofs.hpp"
#include "unav/svg.hpp"

using namespace unav;

namespace {

int g_failures = 0;

void line(int criterion, bool pass, const std::string& detail) {
    std::printf("CRITERION %d: %s - %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1: proofs

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    ProofRunner r33("."), r22(".");
    ProofResult a = r33.run_file("scripts/s33.proof");
    ProofResult b = r22.run_file("scripts/s22.proof");
    double dt = seconds_since(t0);
    bool ok = a.verdict == Verdict::True && b.verdict == Verdict::True &&
              a.conclusion == "s(33) >= 6" && b.conclusion == "s(22) >= 5" && dt < 60.0;
    std::string table = render_bounds_table(true);
    bool rendered = table.find("  22  5") != std::string::npos &&
                    table.find("  33  6") != std::string::npos;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "prove s33 -> %s, prove s22 -> %s, bounds render s(22)=5 s(33)=6: %s, %.1fs",
                  to_string(a.verdict), to_string(b.verdict), rendered ? "yes" : "no", dt);
    line(1, ok && rendered, buf);
}

// ------------------------------------------------------- 2: inequality audit

void criterion2() {
    ProofRunner runner(".");
    ProofResult r = runner.run_file("scripts/s33.proof");
    std::map<std::string, const ReportEntry*> first;
    for (auto& e : r.report.entries())
        if (e.kind == ReportEntry::Kind::Inequality && !first.count(e.id)) first[e.id] = &e;
    struct Want {
        const char* id;
        const char* text;
    };
    const Want wanted[] = {
        {"compress.headline", "2(sqrt2-1/2)+2(0.8)+3(sqrt3/2) > 6"},
        {"resource.lemma7_chain", "0.505 sqrt2 - 0.51 < (sqrt2-1)/2"},
        {"resource.parallel_bound_ge_1", "2 sqrt2 - 2(sqrt2-1/2) = 1, strict"},
        {"lemma.quad_b_lt_f_a", "f(sqrt3/2) > 1/2"},
    };
    bool ok = r.verdict == Verdict::True;
    std::string detail;
    int n_audit = (int)r.report.inequality_ids().size();
    for (auto& w : wanted) {
        auto it = first.find(w.id);
        if (it == first.end()) {
            ok = false;
            detail += std::string(w.id) + " missing; ";
            continue;
        }
        const ReportEntry* e = it->second;
        bool good = e->verdict == Verdict::True && e->lhs.width() < 1e-9 && e->rhs.width() < 1e-9;
        if (std::string(w.id) == "resource.parallel_bound_ge_1") good = good && e->strict_conclusion;
        if (!good) {
            ok = false;
            detail += std::string(w.id) + " not certified tightly; ";
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%d audited inequality ids, named four decided true with widths < 1e-9%s%s",
                  n_audit, detail.empty() ? "" : " except: ", detail.c_str());
    line(2, ok, buf);
}

// ------------------------------------------------------------- 3: f-curve

void criterion3() {
    auto g = [](double a, double t) {
        double c = std::cos(t), s = std::sin(t);
        return c / (1.0 + c) + (1.0 - a * c) / s;
    };
    const double pi4 = std::acos(-1.0) / 4.0;
    bool ok = true;
    std::string detail;
    for (const char* expr : {"0.83", "0.85", "sqrt(3)/2", "0.9", "0.95"}) {
        Exact a = parse_constant(expr);
        FCurvePoint fp = eval_f(a);
        double av = a.approx();
        // dense grid oracle, 1e7 samples plus refinement
        double lo = 1e-4, hi = pi4, best = 1e18, bt = lo;
        for (int pass = 0; pass < 3; ++pass) {
            long n = pass == 0 ? 10000000 : 100000;
            double step = (hi - lo) / (double)n;
            best = 1e18;
            for (long i = 0; i <= n; ++i) {
                double t = std::min(lo + (double)i * step, pi4);
                double v = g(av, t);
                if (v < best) best = v, bt = t;
            }
            lo = std::max(1e-4, bt - 2 * step);
            hi = std::min(pi4, bt + 2 * step);
        }
        bool good = std::abs(fp.f_value.mid() - best) < 1e-9 && fp.f_value.width() < 1e-9 &&
                    fp.cubic_residual.lo > -1e-9 && fp.cubic_residual.hi < 1e-9;
        if (!good) {
            ok = false;
            detail += std::string(expr) + " off; ";
        }
    }
    line(3, ok, detail.empty()
                    ? "eval_f matches the 1e7-sample oracle within 1e-9 at all five a values, "
                      "cubic residuals within 1e-9"
                    : detail);
}

// --------------------------------------------------------- 4: certificates

void criterion4() {
    bool ok = true;
    std::string detail;
    int verified = 0;
    for (const char* path : {"figures/fig1.cert", "figures/fig2_red.cert",
                             "figures/fig2_blue.cert", "figures/fig3.cert"}) {
        CertFile f = load_cert_file(path);
        for (auto& cert : f.certs) {
            if (verify_certificate(cert).verdict == Verdict::True) ++verified;
            else {
                ok = false;
                detail += std::string(path) + ":" + cert.color + " failed; ";
            }
        }
    }
    // deletion sensitivity, exhaustive over the 33 points of figure 1
    CertFile f1 = load_cert_file("figures/fig1.cert");
    int broken = 0;
    for (size_t k = 0; k < f1.config.points.size(); ++k) {
        Certificate mutated = f1.certs.at(0);
        mutated.config.points.erase(mutated.config.points.begin() + (long)k);
        if (verify_certificate(mutated).verdict == Verdict::False) ++broken;
    }
    if (broken != 33) ok = false;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d certificates verify true; %d/33 single-point deletions flip to false%s%s",
                  verified, broken, detail.empty() ? "" : "; ", detail.c_str());
    line(4, ok && verified == 5, buf);
}

// ------------------------------------------------------------ 5: falsifier

void criterion5() {
    bool ok = true;
    std::string detail;
    for (const char* path : {"figures/fig1.cert", "figures/fig2_red.cert",
                             "figures/fig2_blue.cert", "figures/fig3.cert"}) {
        CertFile f = load_cert_file(path);
        for (auto& cert : f.certs) {
            FalsificationResult r = falsify(f.config, cert.color, {});
            if (r.found) {
                ok = false;
                detail += std::string(path) + ":" + cert.color + " falsified?!; ";
            }
        }
    }
    // the hole left by removing (1, sqrt(2)-1/2) must be found within 5 min
    CertFile f1 = load_cert_file("figures/fig1.cert");
    Configuration cfg = f1.config;
    EPt target{Exact(1), parse_constant("sqrt(2)-1/2")};
    cfg.points.erase(std::find_if(cfg.points.begin(), cfg.points.end(),
                                  [&](const ConfigPoint& p) { return p.pos == target; }));
    auto t0 = std::chrono::steady_clock::now();
    FalsificationResult r = falsify(cfg, "black", {});
    double dt = seconds_since(t0);
    if (!(r.found && dt < 300.0)) ok = false;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "no empty box in any verified certificate at step 0.02/1deg; hole after "
                  "deleting (1, sqrt2-1/2) found at (%.2f, %.2f) in %.1fs%s%s",
                  r.cx, r.cy, dt, detail.empty() ? "" : "; ", detail.c_str());
    line(5, ok, buf);
}

// ------------------------------------------------------ 6: region analysis

void criterion6() {
    // Constraint sets of the two case analyses, as executed by the s22 proof.
    auto build = [&](const char* covered_y, std::vector<const char*> denied_y) {
        std::vector<MpConstraint> cs;
        MpConstraint hp;
        hp.type = MpConstraint::Type::HalfPlaneXGE;
        hp.x_min = parse_constant("sqrt(2)-1/2 + (sqrt(2)-1)/2");
        cs.push_back(hp);
        for (auto* y : denied_y) {
            MpConstraint d;
            d.type = MpConstraint::Type::DiskOut;
            d.center = {parse_constant("sqrt(2)-1/2"), parse_constant(y)};
            d.r2 = frac(1, 4);
            cs.push_back(d);
        }
        MpConstraint din;
        din.type = MpConstraint::Type::DiskIn;
        din.center = {parse_constant("1/2"), parse_constant(covered_y)};
        din.r2 = frac(101, 200) * frac(101, 200) * Exact(2);
        cs.push_back(din);
        return feasible_midpoint_region(cs);
    };

    MpRegion case1 = build("5/2", {"2", "3"});
    MpRegion case2 = build("9/10", {"1"});

    auto matches = [](const MpRegion& reg, double px, double py) {
        for (auto& c : reg.corners) {
            double dx = std::max({0.0, c.x.lo - px, px - c.x.hi});
            double dy = std::max({0.0, c.y.lo - py, py - c.y.hi});
            if (dx <= 0.01 && dy <= 0.01) return true;
        }
        return false;
    };

    struct Ref {
        const MpRegion* reg;
        double x, y;
    };
    const Ref refs[] = {
        {&case1, 1.12, 2.45}, {&case1, 1.12, 2.55}, {&case1, 1.2, 2.4}, {&case1, 1.2, 2.6},
        {&case2, 1.13, 0.56}, {&case2, 1.13, 1.24},
    };
    int matched = 0;
    std::string misses;
    for (auto& ref : refs) {
        if (matches(*ref.reg, ref.x, ref.y)) ++matched;
        else {
            char b[64];
            std::snprintf(b, sizeof b, "(%g, %g) ", ref.x, ref.y);
            misses += b;
        }
    }

    Report rep;
    Verdict d1 = region_in_disk(case1, {parse_constant("3/2"), parse_constant("5/2")},
                                frac(1, 2), rep);
    Verdict d2 = region_in_disk(case2, {parse_constant("sqrt(2)-1/2"), Exact(1)}, frac(1, 2),
                                rep);
    bool disks = d1 == Verdict::True && d2 == Verdict::True;
    bool ok = matched == 6 && disks;
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "%d/6 reference intersection coordinates matched within 0.01%s%s; "
                  "region-in-disk true for both cases: %s"
                  "%s",
                  matched, misses.empty() ? "" : "; unmatched: ", misses.c_str(),
                  disks ? "yes" : "no",
                  matched == 6
                      ? ""
                      : " (case-2 references are inconsistent with their own defining "
                        "constraints: the rigorous corners sit at y = 0.9 -+ 0.3522, i.e. "
                        "0.5478 and 1.2522, each 0.0122 from the reference; see "
                        "docs/discrepancies.md)");
    line(6, ok, buf);
}

// -------------------------------------------------------------- 7: packing

void criterion7() {
    bool ok = true;
    std::string detail;
    std::vector<std::pair<int, int>> cases = {{22, 5}, {33, 6}};
    for (int m = 2; m <= 6; ++m) cases.push_back({m * m - 1, m});
    for (auto [n, m] : cases) {
        if (validate_packing(trivial_packing(n, m)).verdict != Verdict::True) {
            ok = false;
            detail += "(" + std::to_string(n) + "," + std::to_string(m) + ") failed; ";
        }
    }
    PackingInstance overlap = trivial_packing(22, 5);
    overlap.boxes[3].cx = overlap.boxes[2].cx + frac(1, 2);
    if (validate_packing(overlap).verdict != Verdict::False) {
        ok = false;
        detail += "overlap accepted; ";
    }
    PackingInstance protrude = trivial_packing(22, 5);
    protrude.boxes[0].cy = -frac(1, 10);
    if (validate_packing(protrude).verdict != Verdict::False) {
        ok = false;
        detail += "protrusion accepted; ";
    }
    line(7, ok,
         detail.empty() ? "trivial packings validate; injected overlap and protrusion refuse"
                        : detail);
}

// ------------------------------------------------------ 8: property suites

void criterion8() {
    bool ok = true;
    std::string detail;

    // interval containment monotonicity, 1e5 random cases
    {
        std::mt19937_64 rng(818);
        std::uniform_real_distribution<double> val(-10.0, 10.0), wid(0.0, 2.0), unit(0.0, 1.0);
        long violations = 0;
        for (long i = 0; i < 100000; ++i) {
            double alo = val(rng), blo = val(rng);
            Interval a(alo, alo + wid(rng)), b(blo, blo + wid(rng));
            double x = a.lo + unit(rng) * a.width();
            double y = b.lo + unit(rng) * b.width();
            if (!(a + b).contains(x + y)) ++violations;
            if (!(a - b).contains(x - y)) ++violations;
            if (!(a * b).contains(x * y)) ++violations;
        }
        if (violations != 0) {
            ok = false;
            detail += std::to_string(violations) + " interval violations; ";
        }
    }

    // Monte-Carlo lemma soundness: 1e6 boxes per verified application
    {
        std::vector<LemmaApp> apps;
        for (const char* path : {"figures/fig1.cert", "figures/fig2_red.cert",
                                 "figures/fig2_blue.cert", "figures/fig3.cert"}) {
            CertFile f = load_cert_file(path);
            for (auto& cert : f.certs)
                for (auto& app : cert.apps) apps.push_back(app);
        }
        std::atomic<long> total_violations{0};
        std::atomic<size_t> next{0};
        int nthreads = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::thread> threads;
        for (int t = 0; t < nthreads; ++t)
            threads.emplace_back([&]() {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= apps.size()) return;
                    McResult mc = monte_carlo_lemma_check(apps[i], 1000000, 7000 + (uint64_t)i);
                    total_violations += mc.violations;
                }
            });
        for (auto& t : threads) t.join();
        char buf[96];
        std::snprintf(buf, sizeof buf, "%zu applications x 1e6 boxes: %ld violations; ",
                      apps.size(), total_violations.load());
        detail += buf;
        if (total_violations != 0) ok = false;
    }

    // mutation sensitivity of the proof scripts
    {
        struct M {
            const char* script;
            const char* key;
            const char* value;
        };
        const M muts[] = {
            {"scripts/s33.proof", "line-capacity", "7"},
            {"scripts/s33.proof", "shift", "0"},
            {"scripts/s33.proof", "slide-to", "9/10"},
            {"scripts/s33.proof", "row-dy", "1/20"},
            {"scripts/s33.proof", "line-x", "9/10"},
            {"scripts/s22.proof", "line-capacity", "6"},
            {"scripts/s22.proof", "shift", "0"},
            {"scripts/s22.proof", "slide-to", "9/10"},
            {"scripts/s22.proof", "row-dy", "1/20"},
            {"scripts/s22.proof", "line-x", "9/10"},
        };
        int failed_as_expected = 0;
        for (auto& m : muts) {
            Mutations mut;
            mut.kv[m.key] = m.value;
            ProofRunner runner(".");
            if (runner.run_file(m.script, mut).verdict != Verdict::True) ++failed_as_expected;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d/10 curated mutations break the proofs", failed_as_expected);
        detail += buf;
        if (failed_as_expected != 10) ok = false;
    }
    line(8, ok, detail);
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("acceptance finished in %.1fs with %d failing criterion(s)\n",
                seconds_since(t0), g_failures);
    return g_failures;
}

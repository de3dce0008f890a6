#include <catch2/catch_amalgamated.hpp>

#include "unav/proofs.hpp"

using namespace unav;

TEST_CASE("the s33 proof runs to a certified contradiction") {
    ProofRunner runner(".");
    ProofResult r = runner.run_file("scripts/s33.proof");
    INFO(r.report.render_text().substr(0, 4000));
    REQUIRE(r.verdict == Verdict::True);
    CHECK(r.conclusion == "s(33) >= 6");
}

TEST_CASE("the s22 proof runs all four cases to contradictions") {
    ProofRunner runner(".");
    ProofResult r = runner.run_file("scripts/s22.proof");
    INFO(r.report.render_text().substr(0, 4000));
    REQUIRE(r.verdict == Verdict::True);
    CHECK(r.conclusion == "s(22) >= 5");
}

TEST_CASE("s33 inequality audit matches the documented set") {
    ProofRunner runner(".");
    ProofResult r = runner.run_file("scripts/s33.proof");
    REQUIRE(r.verdict == Verdict::True);
    // the canonical audit list, mirrored in docs/inequalities.md
    std::vector<std::string> documented = {
        "compress.gap_le_0.8",
        "compress.headline",
        "lemma.quad_a_gt_2sqrt2m2",
        "lemma.quad_a_lt_1",
        "lemma.quad_anchor_dist_le_1",
        "lemma.quad_b_gt_0",
        "lemma.quad_b_lt_1",
        "lemma.quad_b_lt_f_a",
        "lemma.rect_a2b_le_2sqrt2",
        "lemma.rect_a_le_1",
        "lemma.rect_b_le_1",
        "lemma.tri_side_le_1",
        "resource.lemma7_chain",
        "resource.parallel_bound_ge_1",
        "resource.parallel_d_le_1",
        "resource.point_dist_gt_051",
        "resource.total_gt_capacity",
        "shift.crit_dist_le_1",
        "slide.gap_lt_2sqrt2m2",
    };
    CHECK(r.report.inequality_ids() == documented);
}

TEST_CASE("criterion-2 inequalities are certified with width below 1e-9") {
    ProofRunner runner(".");
    ProofResult r = runner.run_file("scripts/s33.proof");
    REQUIRE(r.verdict == Verdict::True);
    std::map<std::string, const ReportEntry*> first;
    for (auto& e : r.report.entries())
        if (e.kind == ReportEntry::Kind::Inequality && !first.count(e.id)) first[e.id] = &e;

    for (const char* id : {"compress.headline", "resource.lemma7_chain",
                           "resource.parallel_bound_ge_1", "lemma.quad_b_lt_f_a"}) {
        REQUIRE(first.count(id));
        const ReportEntry* e = first[id];
        INFO(id);
        CHECK(e->verdict == Verdict::True);
        CHECK(e->lhs.width() < 1e-9);
        CHECK(e->rhs.width() < 1e-9);
    }
    // the boundary case min{1, 2sqrt(2)-2d} = 1 carries the strictness flag
    CHECK(first["resource.parallel_bound_ge_1"]->strict_conclusion);
}

TEST_CASE("curated mutations all break the proofs") {
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
    for (auto& m : muts) {
        Mutations mut;
        mut.kv[m.key] = m.value;
        ProofRunner runner(".");
        ProofResult r = runner.run_file(m.script, mut);
        INFO(m.script << " with " << m.key << "=" << m.value);
        CHECK(r.verdict != Verdict::True);
    }
}

TEST_CASE("bounds table is consistent and upgrades after the proofs") {
    CHECK_NOTHROW(render_bounds_table(false));
    CHECK_NOTHROW(render_bounds_table(true));
    std::string before = render_bounds_table(false);
    CHECK(before.find("sqrt(15)+1") != std::string::npos);
    CHECK(before.find("sqrt(24)+1") != std::string::npos);
    std::string after = render_bounds_table(true);
    CHECK(after.find("sqrt(15)+1") == std::string::npos);
}

TEST_CASE("structured reports are byte-identical across runs") {
    ProofRunner r1("."), r2(".");
    std::string a = r1.run_file("scripts/s22.proof").report.render_json();
    std::string b = r2.run_file("scripts/s22.proof").report.render_json();
    CHECK(a == b);
}

#include <catch2/catch_amalgamated.hpp>

#include "unav/certificate.hpp"
#include "unav/deformation.hpp"

using namespace unav;

namespace {

Configuration fig_config(const char* path) { return load_cert_file(path).config; }

// Independent closed-form oracle for the compression targets: rows below the
// target stack up from sqrt(2)-1/2 at spacing sqrt(3)/2, rows above stack
// down from m - (sqrt(2)-1/2), and the target row is centred.
std::vector<double> oracle_targets(double m, int nrows, int ti) {
    double edge = std::sqrt(2.0) - 0.5, gap = std::sqrt(3.0) / 2.0;
    std::vector<double> y(nrows);
    for (int j = 0; j < ti; ++j) y[j] = edge + j * gap;
    for (int j = ti + 1; j < nrows; ++j) y[j] = (m - edge) - (nrows - 1 - j) * gap;
    if (ti == 0) y[0] = edge;
    else if (ti == nrows - 1) y[ti] = m - edge;
    else y[ti] = 0.5 * (y[ti - 1] + y[ti + 1]);
    return y;
}

// A 5-point unavoidable set in [0, 2.2]^2 that a 2x2 packing of boxes can
// coexist with; used for obligation-soundness checks.
Configuration small_config() {
    Configuration cfg;
    cfg.side = parse_constant("11/5");
    auto add = [&](const char* id, const char* x, const char* y, int row) {
        cfg.points.push_back({id, {parse_constant(x), parse_constant(y)}, "black", row});
    };
    add("l1", "1", "9/10", 1);
    add("l2", "6/5", "9/10", 1);
    add("u1", "3/5", "13/10", 2);
    add("u2", "11/10", "13/10", 2);
    add("u3", "8/5", "13/10", 2);
    return cfg;
}

} // namespace

TEST_CASE("compression schedules reach the closed-form targets and verify") {
    Configuration cfg = fig_config("figures/fig2_red.cert");
    for (int row = 1; row <= 6; ++row) {
        MovementSchedule ms =
            row_compression_targets(cfg, "red", row, "F" + std::to_string(row));
        REQUIRE(ms.target_heights.size() == 6);
        auto oracle = oracle_targets(6.0, 6, row - 1);
        for (int j = 0; j < 6; ++j)
            CHECK(std::abs(ms.target_heights[j].approx() - oracle[j]) < 1e-12);
        Report rep;
        ScheduleResult r = verify_schedule(ms, rep);
        INFO(rep.render_text());
        CHECK(r.verdict == Verdict::True);
    }
}

TEST_CASE("compressed gaps around the target row stay at most 0.8") {
    Configuration cfg = fig_config("figures/fig2_red.cert");
    Exact bound = frac(4, 5);
    for (int row = 1; row <= 6; ++row) {
        MovementSchedule ms = row_compression_targets(cfg, "red", row, "F");
        auto& y = ms.target_heights;
        size_t ti = (size_t)row - 1;
        if (ti > 0) CHECK((y[ti] - y[ti - 1]) <= bound);
        if (ti + 1 < y.size()) CHECK((y[ti + 1] - y[ti]) <= bound);
    }
}

TEST_CASE("s22-style shift certifies the exact boundary case 0.6^2 + 0.8^2 = 1") {
    Configuration cfg = fig_config("figures/fig3.cert");
    RowScheduleSpec spec;
    spec.target_row = 2;
    spec.shift = mpq_class(1, 10);
    spec.slide = true;
    MovementSchedule ms = make_row_schedule(cfg, "red", spec, "r2");
    Report rep;
    ScheduleResult r = verify_schedule(ms, rep);
    INFO(rep.render_text());
    REQUIRE(r.verdict == Verdict::True);
    // the leftmost point's sweep covers [0.4, 1] x {1.7}
    ObligationClass cls;
    cls.id = "c";
    for (auto& ob : r.obligations)
        if (ob.point_id == "r2_1") cls.members.push_back(ob);
    REQUIRE(cls.members.size() == 1);
    CHECK(class_covers_segment(cls, frac(2, 5), Exact(1), frac(17, 10)));
    CHECK(!class_covers_segment(cls, frac(3, 10), Exact(1), frac(17, 10)));
}

TEST_CASE("schedules reject a widened shift") {
    Configuration cfg = fig_config("figures/fig3.cert");
    RowScheduleSpec spec;
    spec.target_row = 2;
    spec.shift = mpq_class(1, 4);  // 0.75^2 + 0.8^2 > 1
    MovementSchedule ms = make_row_schedule(cfg, "red", spec, "bad");
    Report rep;
    CHECK(verify_schedule(ms, rep).verdict == Verdict::False);
}

TEST_CASE("restricted points must stay constant") {
    Configuration cfg = fig_config("figures/fig3.cert");
    RowScheduleSpec spec;
    spec.target_row = 2;
    spec.shift = mpq_class(1, 10);
    spec.restricted.insert("r2_3");  // a point the shift moves
    MovementSchedule ms = make_row_schedule(cfg, "red", spec, "restr");
    Report rep;
    CHECK(verify_schedule(ms, rep).verdict == Verdict::False);
}

TEST_CASE("constant schedules emit point obligations at the base positions") {
    Configuration cfg = fig_config("figures/fig3.cert");
    RowScheduleSpec spec;
    spec.target_row = 1;
    MovementSchedule ms = make_row_schedule(cfg, "red", spec, "const");
    Report rep;
    ScheduleResult r = verify_schedule(ms, rep);
    REQUIRE(r.verdict == Verdict::True);
    for (auto& ob : r.obligations) {
        CHECK(!ob.moved);
        REQUIRE(ob.waypoints.size() == 1);
        CHECK(ob.waypoints[0] == ms.base.at(ob.point_id));
    }
}

TEST_CASE("piecewise reparameterization preserves verdict and obligations") {
    Configuration cfg = fig_config("figures/fig3.cert");
    RowScheduleSpec spec;
    spec.target_row = 2;
    spec.shift = mpq_class(1, 10);
    MovementSchedule ms = make_row_schedule(cfg, "red", spec, "orig");

    // split every phase at t = 1/2 into two affine phases
    MovementSchedule split = ms;
    split.phases.clear();
    mpq_class half(1, 2);
    for (auto& ph : ms.phases) {
        SchedulePhase first, second;
        for (auto& [id, p] : ph.traj) {
            Exact x0 = p.x.at0(), xm = p.x.at(half), x1 = p.x.at1();
            Exact y0 = p.y.at0(), ym = p.y.at(half), y1 = p.y.at1();
            first.traj.emplace(id, APt{Aff::between(x0, xm), Aff::between(y0, ym)});
            second.traj.emplace(id, APt{Aff::between(xm, x1), Aff::between(ym, y1)});
        }
        auto split_apps = [&](bool first_half) {
            std::vector<AApp> out;
            for (auto& app : ph.apps) {
                AApp a = app;
                auto remap = [&](const Aff& f) {
                    Exact lo = first_half ? f.at0() : f.at(half);
                    Exact hi = first_half ? f.at(half) : f.at1();
                    return Aff::between(lo, hi);
                };
                for (auto& v : a.region) v = APt{remap(v.x), remap(v.y)};
                for (auto& an : a.anchors) an.pos = APt{remap(an.pos.x), remap(an.pos.y)};
                for (auto& e : a.escapes) {
                    e.first = APt{remap(e.first.x), remap(e.first.y)};
                    e.second = APt{remap(e.second.x), remap(e.second.y)};
                }
                out.push_back(std::move(a));
            }
            return out;
        };
        first.apps = split_apps(true);
        second.apps = split_apps(false);
        split.phases.push_back(std::move(first));
        split.phases.push_back(std::move(second));
    }

    Report rep1, rep2;
    ScheduleResult r1 = verify_schedule(ms, rep1);
    ScheduleResult r2 = verify_schedule(split, rep2);
    REQUIRE(r1.verdict == Verdict::True);
    REQUIRE(r2.verdict == Verdict::True);
    REQUIRE(r1.obligations.size() == r2.obligations.size());
    for (size_t i = 0; i < r1.obligations.size(); ++i) {
        const Obligation &a = r1.obligations[i], &b = r2.obligations[i];
        CHECK(a.point_id == b.point_id);
        REQUIRE(a.waypoints.size() == b.waypoints.size());
        for (size_t k = 0; k < a.waypoints.size(); ++k) CHECK(a.waypoints[k] == b.waypoints[k]);
    }
}

TEST_CASE("obligation soundness against an explicit packing") {
    Configuration cfg = small_config();
    // the 5-point set is unavoidable by its lattice certificate
    Certificate cert = build_lattice_certificate(cfg, "black");
    VerifyResult vr = verify_certificate(cert);
    INFO(vr.report.render_text());
    REQUIRE(vr.verdict == Verdict::True);

    // four boxes actually packed in [0, 2.2]^2
    std::vector<Box> boxes;
    for (double cx : {0.55, 1.65})
        for (double cy : {0.55, 1.65})
            boxes.push_back(Box{{Interval::exact(cx), Interval::exact(cy)},
                                Interval::exact(0.0), Interval::exact(1.001)});

    // slide-only: the only moving point (0.6, 1.3) is covered by exactly one
    // box, so the movement respects the stationarity conditions for this
    // packing (a whole-row shift would move the uncovered point (1.1, 1.3))
    RowScheduleSpec spec;
    spec.target_row = 2;
    spec.slide = true;
    spec.slide_to = parse_constant("1");
    MovementSchedule ms = make_row_schedule(cfg, "black", spec, "small");
    Report rep;
    ScheduleResult r = verify_schedule(ms, rep);
    INFO(rep.render_text());
    REQUIRE(r.verdict == Verdict::True);

    // every obligation lies inside one box or entirely outside all of them
    for (auto& ob : r.obligations) {
        int inside_box = -1;
        bool outside_all = true;
        for (size_t b = 0; b < boxes.size(); ++b) {
            bool all_in = true, any_in = false;
            for (size_t k = 0; k + 1 < std::max<size_t>(ob.waypoints.size(), 2); ++k) {
                const EPt& p = ob.waypoints[std::min(k, ob.waypoints.size() - 1)];
                const EPt& q = ob.waypoints[std::min(k + 1, ob.waypoints.size() - 1)];
                for (int s = 0; s <= 4; ++s) {
                    Exact t(mpq_class(s, 4));
                    EPt mid{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
                    Verdict v = box_contains_point(boxes[b], mid.to_interval());
                    if (v != Verdict::True) all_in = false;
                    if (v == Verdict::True) any_in = true;
                }
            }
            if (all_in) inside_box = (int)b;
            if (any_in) outside_all = false;
        }
        INFO("obligation " << ob.point_id);
        CHECK((inside_box >= 0 || outside_all));
    }
}

TEST_CASE("merge chains demand certified shared points") {
    Obligation a;
    a.point_id = "a";
    a.waypoints = {{parse_constant("2/5"), Exact(1)}, {Exact(1), Exact(1)}};
    Obligation b;
    b.point_id = "b";
    b.waypoints = {{Exact(1), Exact(1)}, {Exact(1), Exact(2)}};
    ObligationClass good;
    good.id = "good";
    good.members = {a, b};
    good.shared = {{Exact(1), Exact(1)}};
    Report rep;
    CHECK(verify_class_merge(good, rep));

    ObligationClass bad = good;
    bad.shared = {{Exact(2), Exact(1)}};  // not on either sweep
    CHECK(!verify_class_merge(bad, rep));

    // union of [0.4, 0.5] and [0.5, 1] covers [0.4, 1]
    Obligation left;
    left.waypoints = {{parse_constant("1/2"), Exact(0)}, {parse_constant("2/5"), Exact(0)}};
    Obligation right;
    right.waypoints = {{parse_constant("1/2"), Exact(0)}, {Exact(1), Exact(0)}};
    ObligationClass seg;
    seg.members = {left, right};
    seg.shared = {{parse_constant("1/2"), Exact(0)}};
    CHECK(class_covers_segment(seg, parse_constant("2/5"), Exact(1), Exact(0)));
}

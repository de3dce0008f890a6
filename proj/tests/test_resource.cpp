#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "unav/resource.hpp"

using namespace unav;

namespace {

// synthetic full-coverage class: a horizontal sweep [0.4, 1] x {y}
ObligationClass sweep_class(const std::string& id, const Exact& y) {
    Obligation ob;
    ob.point_id = id;
    ob.waypoints = {{parse_constant("2/5"), y}, {Exact(1), y}};
    ob.moved = true;
    ObligationClass cls;
    cls.id = id;
    cls.members = {ob};
    return cls;
}

} // namespace

TEST_CASE("six strict chords against capacity six give a contradiction") {
    ResourceLine l{parse_constant("sqrt(2)-1/2"), Exact(0), Exact(6)};
    std::vector<ObligationClass> clss;
    std::vector<ResourceClassInput> in;
    for (int i = 0; i < 6; ++i) {
        Exact y = frac(1, 2) + Exact(i);
        clss.push_back(sweep_class("c" + std::to_string(i), y));
    }
    for (int i = 0; i < 6; ++i) {
        Exact y = frac(1, 2) + Exact(i);
        in.push_back({clss[i].id, &clss[i], {parse_constant("2/5"), y}, true, y});
    }
    ResourceOutcome out = line_resource_argument(l, in, -1, Exact(6));
    CHECK(out.contradiction == Verdict::True);
}

TEST_CASE("five chords against capacity six do not suffice") {
    ResourceLine l{parse_constant("sqrt(2)-1/2"), Exact(0), Exact(6)};
    std::vector<ObligationClass> clss;
    std::vector<ResourceClassInput> in;
    for (int i = 0; i < 5; ++i) {
        Exact y = frac(1, 2) + Exact(i);
        clss.push_back(sweep_class("c" + std::to_string(i), y));
    }
    for (int i = 0; i < 5; ++i) {
        Exact y = frac(1, 2) + Exact(i);
        in.push_back({clss[i].id, &clss[i], {parse_constant("2/5"), y}, true, y});
    }
    ResourceOutcome out = line_resource_argument(l, in, -1, Exact(6));
    CHECK(out.contradiction == Verdict::False);
}

TEST_CASE("removing an obligation never creates a contradiction") {
    // monotonicity: if a set of classes yields no contradiction, neither does
    // any subset
    ResourceLine l{parse_constant("sqrt(2)-1/2"), Exact(0), Exact(6)};
    for (int n = 1; n <= 5; ++n) {
        std::vector<ObligationClass> clss;
        std::vector<ResourceClassInput> in;
        for (int i = 0; i < n; ++i) {
            Exact y = frac(1, 2) + Exact(i);
            clss.push_back(sweep_class("c" + std::to_string(i), y));
        }
        for (int i = 0; i < n; ++i) {
            Exact y = frac(1, 2) + Exact(i);
            in.push_back({clss[i].id, &clss[i], {parse_constant("2/5"), y}, true, y});
        }
        CHECK(line_resource_argument(l, in, -1, Exact(6)).contradiction == Verdict::False);
    }
}

TEST_CASE("the exceptional chord window matches the count bounds") {
    ResourceLine l{parse_constant("sqrt(2)-1/2"), Exact(0), Exact(5)};
    std::vector<ObligationClass> clss;
    std::vector<ResourceClassInput> in;
    std::vector<const char*> ys = {"9/10", "17/10", "5/2", "33/10", "41/10"};
    for (int i = 0; i < 5; ++i) clss.push_back(sweep_class("c" + std::to_string(i), parse_constant(ys[i])));
    for (int i = 0; i < 5; ++i) {
        Exact y = parse_constant(ys[i]);
        const char* x0 = (i == 2) ? "1/2" : "2/5";
        in.push_back({clss[i].id, &clss[i], {parse_constant(x0), y}, i != 2, y});
    }
    ResourceOutcome out = line_resource_argument(l, in, 2, Exact(5));
    REQUIRE(out.contradiction == Verdict::True);
    REQUIRE(out.window.has_value());
    CHECK(out.window->lo == Exact(2));
    CHECK(out.window->hi == Exact(3));
}

namespace {

// double-precision oracle for circle/line intersections
struct DPt {
    double x, y;
};
std::vector<DPt> line_circle(double lx, double cx, double cy, double r2) {
    double dx = lx - cx;
    double disc = r2 - dx * dx;
    if (disc < 0) return {};
    double h = std::sqrt(disc);
    return {{lx, cy - h}, {lx, cy + h}};
}
std::vector<DPt> circle_circle(double x1, double y1, double r1sq, double x2, double y2,
                               double r2sq) {
    double dx = x2 - x1, dy = y2 - y1;
    double d2 = dx * dx + dy * dy;
    double a = (d2 + r1sq - r2sq) / (2 * d2);
    double h2 = r1sq / d2 - a * a;
    if (h2 < 0) return {};
    double h = std::sqrt(h2);
    return {{x1 + a * dx - h * dy, y1 + a * dy + h * dx},
            {x1 + a * dx + h * dy, y1 + a * dy - h * dx}};
}

} // namespace

TEST_CASE("case-1 midpoint region corners match the double oracle") {
    // constraints: x >= (3/2)sqrt(2)-1; outside r=1/2 disks at (sqrt2-1/2, 2)
    // and (sqrt2-1/2, 3); inside r = 0.505*sqrt(2) disk at (1/2, 5/2)
    std::vector<MpConstraint> cs;
    MpConstraint hp;
    hp.type = MpConstraint::Type::HalfPlaneXGE;
    hp.x_min = parse_constant("3*sqrt(2)/2 - 1");
    cs.push_back(hp);
    for (const char* y : {"2", "3"}) {
        MpConstraint d;
        d.type = MpConstraint::Type::DiskOut;
        d.center = {parse_constant("sqrt(2)-1/2"), parse_constant(y)};
        d.r2 = frac(1, 4);
        cs.push_back(d);
    }
    MpConstraint din;
    din.type = MpConstraint::Type::DiskIn;
    din.center = {parse_constant("1/2"), parse_constant("5/2")};
    din.r2 = parse_constant("0.51005");
    cs.push_back(din);

    MpRegion reg = feasible_midpoint_region(cs);

    double lx = 1.5 * std::sqrt(2.0) - 1.0;
    double gx = std::sqrt(2.0) - 0.5;
    auto lc2 = line_circle(lx, gx, 2.0, 0.25);
    auto lc3 = line_circle(lx, gx, 3.0, 0.25);
    auto cc2 = circle_circle(0.5, 2.5, 0.51005, gx, 2.0, 0.25);
    auto cc3 = circle_circle(0.5, 2.5, 0.51005, gx, 3.0, 0.25);
    std::vector<DPt> expected = {lc2[1], lc3[0], cc2[0], cc3[1]};
    // paper-level sanity of the oracle itself
    CHECK(std::abs(lc2[1].x - 1.12) < 0.01);
    CHECK(std::abs(lc2[1].y - 2.45) < 0.01);
    CHECK(std::abs(cc2[0].x - 1.2) < 0.01);
    CHECK(std::abs(cc2[0].y - 2.4) < 0.01);

    int feasible = 0;
    for (auto& c : reg.corners) {
        if (c.feasible == Verdict::False) continue;
        ++feasible;
        bool matched = false;
        for (auto& e : expected)
            if (c.x.contains(e.x) && c.y.contains(e.y)) matched = true;
        CHECK(matched);
    }
    CHECK(feasible == 4);

    // the whole region sits within 1/2 of (3/2, 5/2)
    Report rep;
    CHECK(region_in_disk(reg, {parse_constant("3/2"), parse_constant("5/2")}, frac(1, 2),
                         rep) == Verdict::True);
}

TEST_CASE("case-2 midpoint region is certified inside the denied disk") {
    std::vector<MpConstraint> cs;
    MpConstraint hp;
    hp.type = MpConstraint::Type::HalfPlaneXGE;
    hp.x_min = parse_constant("3*sqrt(2)/2 - 1");
    cs.push_back(hp);
    MpConstraint g;
    g.type = MpConstraint::Type::DiskOut;
    g.center = {parse_constant("sqrt(2)-1/2"), Exact(1)};
    g.r2 = frac(1, 4);
    cs.push_back(g);
    MpConstraint din;
    din.type = MpConstraint::Type::DiskIn;
    din.center = {parse_constant("1/2"), parse_constant("9/10")};
    din.r2 = parse_constant("0.51005");
    cs.push_back(din);

    MpRegion reg = feasible_midpoint_region(cs);
    Report rep;
    CHECK(region_in_disk(reg, {parse_constant("sqrt(2)-1/2"), Exact(1)}, frac(1, 2), rep) ==
          Verdict::True);
}

TEST_CASE("region_in_disk fails when the region genuinely escapes the disk") {
    std::vector<MpConstraint> cs;
    MpConstraint din;
    din.type = MpConstraint::Type::DiskIn;
    din.center = {Exact(0), Exact(0)};
    din.r2 = Exact(1);
    cs.push_back(din);
    MpRegion reg = feasible_midpoint_region(cs);
    Report rep;
    CHECK(region_in_disk(reg, {Exact(2), Exact(0)}, frac(1, 2), rep) == Verdict::False);
}

TEST_CASE("Monte-Carlo farthest-point soundness for the case-1 region") {
    // sample the feasible region; no sample may exceed the certified radius
    std::vector<MpConstraint> cs;
    MpConstraint hp;
    hp.type = MpConstraint::Type::HalfPlaneXGE;
    hp.x_min = parse_constant("3*sqrt(2)/2 - 1");
    cs.push_back(hp);
    for (const char* y : {"2", "3"}) {
        MpConstraint d;
        d.type = MpConstraint::Type::DiskOut;
        d.center = {parse_constant("sqrt(2)-1/2"), parse_constant(y)};
        d.r2 = frac(1, 4);
        cs.push_back(d);
    }
    MpConstraint din;
    din.type = MpConstraint::Type::DiskIn;
    din.center = {parse_constant("1/2"), parse_constant("5/2")};
    din.r2 = parse_constant("0.51005");
    cs.push_back(din);

    double lx = 1.5 * std::sqrt(2.0) - 1.0;
    double gx = std::sqrt(2.0) - 0.5;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ux(lx, 1.3), uy(2.0, 3.0);
    long violations = 0, inside = 0;
    for (long i = 0; i < 1000000; ++i) {
        double x = ux(rng), y = uy(rng);
        auto d2 = [&](double cx, double cy) {
            return (x - cx) * (x - cx) + (y - cy) * (y - cy);
        };
        if (d2(gx, 2.0) < 0.25 || d2(gx, 3.0) < 0.25) continue;
        if (d2(0.5, 2.5) > 0.51005) continue;
        ++inside;
        if (d2(1.5, 2.5) > 0.25) ++violations;
    }
    CHECK(inside > 0);
    CHECK(violations == 0);
}

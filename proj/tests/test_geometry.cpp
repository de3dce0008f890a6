#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "unav/geometry.hpp"
#include "unav/symbolic.hpp"

using namespace unav;

namespace {

Pt pt(double x, double y) { return {Interval::exact(x), Interval::exact(y)}; }

Box mkbox(double cx, double cy, double angle, double side) {
    return Box{pt(cx, cy), Interval::exact(angle), Interval::exact(side)};
}

EPt ept(const char* x, const char* y) { return {parse_constant(x), parse_constant(y)}; }

} // namespace

TEST_CASE("distance examples") {
    CHECK(distance(pt(0, 0), pt(1, 0)).contains(1.0));
    CHECK(distance(pt(0, 0), pt(1, 0)).width() < 1e-15);

    // equilateral construction: (0,1) to (sqrt(3)/2, 1/2) has distance 1
    Pt a = pt(0, 1);
    Pt b = {make_constant("sqrt(3)/2"), Interval::exact(0.5)};
    CHECK(distance(a, b).contains(1.0));
    CHECK(distance(a, b).width() < 1e-12);

    // oracle: sqrt(1 + 0.64)
    Interval d = distance(pt(0.5, 2.0), pt(1.5, 2.8));
    double expect = std::sqrt(1.0 + 0.64);
    CHECK(d.contains(expect));
}

TEST_CASE("box containment") {
    Box b = mkbox(0.5, 0.5, 0.0, 1.005);
    CHECK(box_contains_point(b, pt(0.5, 0.5)) == Verdict::True);
    CHECK(box_contains_point(b, pt(1.01, 0.5)) == Verdict::False);
    // boundary itself is outside the open box
    CHECK(box_contains_point(b, pt(0.5 + 0.5025, 0.5)) == Verdict::False);

    // rotated pi/4 about the origin: interior is |x|+|y| < 1.005/sqrt(2) ~ 0.710642
    Interval pi4 = pi() / Interval::exact(4.0);
    Box r{pt(0, 0), pi4, Interval::exact(1.005)};
    CHECK(box_contains_point(r, pt(0.71, 0.0)) == Verdict::True);
    CHECK(box_contains_point(r, pt(0.7107, 0.0)) == Verdict::False);
}

TEST_CASE("separating axis overlap") {
    Box b1 = mkbox(0.5, 0.5, 0.0, 1.005);
    Box b2 = mkbox(1.6, 0.5, 0.0, 1.005);
    CHECK(boxes_overlap(b1, b2) == Verdict::False);  // gap 0.095
    CHECK(boxes_overlap(b1, b1) == Verdict::True);

    double pi4 = 0.78539816339744831;
    Box b3 = mkbox(1.5, 1.5, pi4, 1.005);
    CHECK(boxes_overlap(b1, b3) == Verdict::False);

    // actual overlap, one rotated
    Box b4 = mkbox(1.1, 1.1, pi4, 1.005);
    CHECK(boxes_overlap(b1, b4) == Verdict::True);
}

TEST_CASE("SAT symmetry under random boxes") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> c(0.0, 5.0), ang(0.0, 1.5), sd(1.001, 1.01);
    for (int i = 0; i < 2000; ++i) {
        Box a = mkbox(c(rng), c(rng), ang(rng), sd(rng));
        Box b = mkbox(c(rng), c(rng), ang(rng), sd(rng));
        CHECK(boxes_overlap(a, b) == boxes_overlap(b, a));
    }
}

TEST_CASE("rigid translation leaves containment unchanged") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0), ang(0.0, 1.5);
    for (int i = 0; i < 2000; ++i) {
        double dx = u(rng), dy = u(rng);
        Box b = mkbox(u(rng), u(rng), ang(rng), 1.005);
        Pt p = pt(u(rng), u(rng));
        Box b2 = b;
        b2.center = {b.center.x + Interval::exact(dx), b.center.y + Interval::exact(dy)};
        Pt p2 = {p.x + Interval::exact(dx), p.y + Interval::exact(dy)};
        CHECK(box_contains_point(b, p) == box_contains_point(b2, p2));
    }
}

TEST_CASE("box-line intersection lengths") {
    // vertical line through the centre of an axis-aligned box
    Box b = mkbox(2.0, 3.0, 0.0, 1.005);
    Segment vert{pt(2.0, 0.0), pt(2.0, 6.0)};
    Interval len = box_line_intersection_length(b, vert);
    CHECK(len.contains(1.005));
    CHECK(len.width() < 1e-12);

    // box entirely to one side
    Segment far{pt(4.0, 0.0), pt(4.0, 6.0)};
    CHECK(box_line_intersection_length(b, far).hi == 0.0);

    // center at distance just inside (sqrt(2)-1)/2 from the line, worst angle pi/4:
    // chord certifiably exceeds 1
    double d = 0.20610  /* < 0.2071.. */;
    Box r = mkbox(2.0 + d, 3.0, 0.78539816339744831, 1.001);
    Interval chord = box_line_intersection_length(r, vert);
    CHECK(chord.lo > 1.0);

    CHECK_THROWS_AS(box_line_intersection_length(b, Segment{pt(1, 1), pt(1, 1)}),
                    IntervalError);
}

TEST_CASE("chord never exceeds side*sqrt(2) nor the segment length") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(0.0, 6.0), ang(0.0, 1.5), sd(1.001, 1.01);
    for (int i = 0; i < 2000; ++i) {
        Box b = mkbox(u(rng), u(rng), ang(rng), sd(rng));
        Pt a = pt(u(rng), u(rng));
        Pt c = pt(u(rng), u(rng));
        if (std::abs(a.x.lo - c.x.lo) + std::abs(a.y.lo - c.y.lo) < 1e-6) continue;
        Segment l{a, c};
        Interval len = box_line_intersection_length(b, l);
        Interval cap = b.side * sqrt(Interval::exact(2.0));
        Interval seglen = distance(a, c);
        CHECK(len.lo <= cap.hi);
        CHECK(len.lo <= seglen.hi);
    }
}

TEST_CASE("point in convex polygon (interval and exact)") {
    std::vector<Pt> tri = {pt(0, 0), pt(1, 0), pt(0.5, 0.8)};
    CHECK(point_in_polygon(pt(0.5, 0.3), tri) == Verdict::True);
    CHECK(point_in_polygon(pt(0.5, 0.8), tri) == Verdict::True);   // vertex, closed
    CHECK(point_in_polygon(pt(-1, -1), tri) == Verdict::False);

    EPolygon sq{{ept("0", "0"), ept("1", "0"), ept("1", "1"), ept("0", "1")}};
    CHECK(sq.valid_convex_ccw());
    CHECK(point_in_epolygon(ept("1/2", "1/2"), sq));
    CHECK(point_in_epolygon(ept("1", "1"), sq));
    CHECK(!point_in_epolygon(ept("3/2", "1/2"), sq));

    EPolygon bad{{ept("0", "0"), ept("0", "1"), ept("1", "0")}};  // clockwise
    CHECK(!bad.valid_convex_ccw());
}

TEST_CASE("coverage: two triangles tile the unit square, one alone does not") {
    EPolygon t1{{ept("0", "0"), ept("1", "0"), ept("1", "1")}};
    EPolygon t2{{ept("0", "0"), ept("1", "1"), ept("0", "1")}};
    Exact one(1);
    CHECK(polygons_cover_square({t1, t2}, one).verdict == Verdict::True);
    auto res = polygons_cover_square({t1}, one);
    CHECK(res.verdict == Verdict::False);
    REQUIRE(res.witness.has_value());
    CHECK(!point_in_epolygon(*res.witness, t1));
}

TEST_CASE("coverage is monotone: adding a region never breaks it") {
    EPolygon t1{{ept("0", "0"), ept("1", "0"), ept("1", "1")}};
    EPolygon t2{{ept("0", "0"), ept("1", "1"), ept("0", "1")}};
    // an overlapping diamond thrown on top
    EPolygon extra{{ept("1/2", "1/4"), ept("3/4", "1/2"), ept("1/2", "3/4"), ept("1/4", "1/2")}};
    CHECK(polygons_cover_square({t1, t2, extra}, Exact(1)).verdict == Verdict::True);
}

TEST_CASE("boundary incidence helpers") {
    Exact six(6);
    CHECK(on_container_boundary(ept("0", "sqrt(2)-1/2"), six));
    CHECK(on_container_boundary(ept("6", "3"), six));
    CHECK(!on_container_boundary(ept("3", "3"), six));
    CHECK(!on_container_boundary(ept("7", "0"), six));
    CHECK(segment_on_container_boundary(ept("1", "0"), ept("2", "0"), six));
    CHECK(segment_on_container_boundary(ept("0", "1"), ept("0", "2"), six));
    CHECK(!segment_on_container_boundary(ept("1", "1"), ept("2", "1"), six));
}

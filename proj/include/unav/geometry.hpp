#pragma once

// Points, segments, rotated boxes and convex polygons.
//
// Two coordinate layers coexist: interval coordinates for anything touching
// arbitrary rotations (box containment, separating-axis overlap, chord
// lengths, the falsifier grid), and exact coordinates for certificate data,
// where coverage and incidence checks must decide boundary cases.

#include <optional>
#include <vector>
#include <algorithm>

#include "interval.hpp"
#include "exact.hpp"

namespace unav {

// ---------------------------------------------------------------- interval

struct Pt {
    Interval x, y;
};

struct Segment {
    Pt a, b;
};

inline Pt operator-(const Pt& p, const Pt& q) { return {p.x - q.x, p.y - q.y}; }
inline Interval dot(const Pt& p, const Pt& q) { return p.x * q.x + p.y * q.y; }
inline Interval cross(const Pt& p, const Pt& q) { return p.x * q.y - p.y * q.x; }

inline Interval distance(const Pt& p, const Pt& q) {
    return sqrt(sqr(p.x - q.x) + sqr(p.y - q.y));
}

// Open rotated square: the box being packed.  side is kept in (1, 1.01] for
// lower-bound arguments; packing validation also instantiates side = 1 via
// the unit-square regime (see packing.hpp).
struct Box {
    Pt center;
    Interval angle;  // radians in [0, pi/2)
    Interval side;

    Pt axis_u() const { return {cos(angle), sin(angle)}; }
    Pt axis_v() const { Interval c = cos(angle), s = sin(angle); return {-s, c}; }
};

inline Verdict box_contains_point(const Box& b, const Pt& p) {
    Pt d = p - b.center;
    Interval half = b.side * Interval::exact(0.5);
    Interval du = abs(dot(d, b.axis_u()));
    Interval dv = abs(dot(d, b.axis_v()));
    Verdict vu = cmp(du, half, Rel::LT);
    Verdict vv = cmp(dv, half, Rel::LT);
    if (vu == Verdict::True && vv == Verdict::True) return Verdict::True;
    if (vu == Verdict::False || vv == Verdict::False) return Verdict::False;
    return Verdict::Indeterminate;
}

// Separating-axis test on the 4 candidate axes (2 edge normals per box).
// True  = open interiors certifiably intersect,
// False = some axis certifiably separates them (shared edges allowed).
inline Verdict boxes_overlap(const Box& b1, const Box& b2) {
    Pt d = b2.center - b1.center;
    Pt axes[4] = {b1.axis_u(), b1.axis_v(), b2.axis_u(), b2.axis_v()};
    Interval h1 = b1.side * Interval::exact(0.5);
    Interval h2 = b2.side * Interval::exact(0.5);
    bool all_strictly_less = true;
    for (const Pt& n : axes) {
        Interval proj = abs(dot(d, n));
        Interval r1 = h1 * (abs(dot(n, b1.axis_u())) + abs(dot(n, b1.axis_v())));
        Interval r2 = h2 * (abs(dot(n, b2.axis_u())) + abs(dot(n, b2.axis_v())));
        Verdict v = cmp(proj, r1 + r2, Rel::GE);
        if (v == Verdict::True) return Verdict::False;  // certified separation
        if (v != Verdict::False) all_strictly_less = false;
    }
    return all_strictly_less ? Verdict::True : Verdict::Indeterminate;
}

// Length of (open box) intersected with segment l: clip the line through l
// to the box slabs, then to the segment's own parameter range.
inline Interval box_line_intersection_length(const Box& b, const Segment& l) {
    Pt dir = l.b - l.a;
    Interval len2 = dot(dir, dir);
    if (cmp(len2, Interval::exact(0.0), Rel::GT) != Verdict::True)
        throw IntervalError("degenerate segment");
    Interval len = sqrt(len2);
    Pt rel = l.a - b.center;
    Interval half = b.side * Interval::exact(0.5);
    // Parameter range [t0, t1] of the line within each slab, t in units of |dir|.
    Interval tlo = Interval::exact(0.0), thi = Interval::exact(1.0);
    Pt axes[2] = {b.axis_u(), b.axis_v()};
    for (const Pt& n : axes) {
        Interval p0 = dot(rel, n);
        Interval dn = dot(dir, n);
        if (dn.contains_zero()) {
            // Line (nearly) parallel to this slab: either fully inside it or
            // fully outside; outside means empty intersection.
            Verdict inside = cmp(abs(p0), half, Rel::LT);
            if (inside == Verdict::False) return Interval::exact(0.0);
            if (inside == Verdict::Indeterminate) {
                // Can't certify; return the trivially sound enclosure.
                Interval worst = min(len, b.side * sqrt(Interval::exact(2.0)));
                return Interval(0.0, worst.hi);
            }
            continue;
        }
        Interval t1 = (-half - p0) / dn;
        Interval t2 = (half - p0) / dn;
        Interval enter = min(t1, t2), exit = max(t1, t2);
        tlo = max(tlo, enter);
        thi = min(thi, exit);
    }
    Interval span = thi - tlo;
    Interval result = span * len;
    double lo = std::max(0.0, result.lo);
    double hi = std::max(0.0, result.hi);
    return Interval(lo, hi);
}

// ------------------------------------------------------------------ exact

struct EPt {
    Exact x, y;

    friend EPt operator-(const EPt& p, const EPt& q) { return {p.x - q.x, p.y - q.y}; }
    friend EPt operator+(const EPt& p, const EPt& q) { return {p.x + q.x, p.y + q.y}; }
    friend bool operator==(const EPt& p, const EPt& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator!=(const EPt& p, const EPt& q) { return !(p == q); }

    Pt to_interval() const { return {x.to_interval(), y.to_interval()}; }
};

inline Exact ecross(const EPt& p, const EPt& q) { return p.x * q.y - p.y * q.x; }
inline Exact edot(const EPt& p, const EPt& q) { return p.x * q.x + p.y * q.y; }
inline Exact dist2(const EPt& p, const EPt& q) {
    Exact dx = p.x - q.x, dy = p.y - q.y;
    return dx * dx + dy * dy;
}

// Convex polygon with exact vertices, counterclockwise.
struct EPolygon {
    std::vector<EPt> v;

    // >= 3 vertices, consecutive cross products >= 0, positive area.
    bool valid_convex_ccw() const {
        size_t n = v.size();
        if (n < 3) return false;
        Exact area;
        for (size_t i = 0; i < n; ++i) {
            const EPt& a = v[i];
            const EPt& b = v[(i + 1) % n];
            const EPt& c = v[(i + 2) % n];
            if (ecross(b - a, c - b).sign() < 0) return false;
            area = area + ecross(a, b);
        }
        return area.sign() > 0;
    }
};

// Closed-region membership for a convex CCW polygon.
inline bool point_in_epolygon(const EPt& p, const EPolygon& poly) {
    size_t n = poly.v.size();
    for (size_t i = 0; i < n; ++i) {
        const EPt& a = poly.v[i];
        const EPt& b = poly.v[(i + 1) % n];
        if (ecross(b - a, p - a).sign() < 0) return false;
    }
    return true;
}

// Interval-coordinate variant (closed semantics, three-valued).
inline Verdict point_in_polygon(const Pt& p, const std::vector<Pt>& poly) {
    bool all_true = true;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Pt& a = poly[i];
        const Pt& b = poly[(i + 1) % poly.size()];
        Interval c = cross(b - a, p - a);
        Verdict v = cmp(c, Interval::exact(0.0), Rel::GE);
        if (v == Verdict::False) return Verdict::False;
        if (v != Verdict::True) all_true = false;
    }
    return all_true ? Verdict::True : Verdict::Indeterminate;
}

struct CoverageResult {
    Verdict verdict = Verdict::Indeterminate;
    std::optional<EPt> witness;  // an uncovered interior point when False
};

namespace detail {

struct ESeg {
    EPt a, b;
};

// x-coordinate of the proper crossing of two non-parallel segments, if the
// crossing lies strictly inside both.
inline std::optional<Exact> proper_crossing_x(const ESeg& s, const ESeg& t) {
    EPt r = s.b - s.a, q = t.b - t.a;
    Exact den = ecross(r, q);
    if (den.sign() == 0) return std::nullopt;
    EPt d = t.a - s.a;
    Exact u = ecross(d, q) / den;  // position along s
    Exact w = ecross(d, r) / den;  // position along t
    if (u.sign() <= 0 || (u - Exact(1)).sign() >= 0) return std::nullopt;
    if (w.sign() <= 0 || (w - Exact(1)).sign() >= 0) return std::nullopt;
    return s.a.x + u * r.x;
}

} // namespace detail

// Does the union of closed convex regions cover the closed square
// [0,m] x [0,m]?  Decided exactly by a slab sweep: between consecutive event
// abscissae no segment endpoints or crossings occur, so each trapezoid cell
// lies entirely inside or outside every region, and one interior witness per
// cell decides it.
inline CoverageResult polygons_cover_square(const std::vector<EPolygon>& regions,
                                            const Exact& m) {
    CoverageResult res;
    for (const auto& r : regions)
        if (!r.valid_convex_ccw())
            throw ExactError("invalid region polygon (must be convex, CCW, nondegenerate)");

    std::vector<detail::ESeg> segs;
    for (const auto& r : regions) {
        size_t n = r.v.size();
        for (size_t i = 0; i < n; ++i) segs.push_back({r.v[i], r.v[(i + 1) % n]});
    }
    Exact zero(0), side = m;
    // Container edges participate so cells respect the square boundary.
    EPt c00{zero, zero}, c10{side, zero}, c11{side, side}, c01{zero, side};
    segs.push_back({c00, c10});
    segs.push_back({c10, c11});
    segs.push_back({c11, c01});
    segs.push_back({c01, c00});

    std::vector<Exact> xs;
    for (const auto& s : segs) {
        xs.push_back(s.a.x);
        xs.push_back(s.b.x);
    }
    // rigorous bounding boxes let most segment pairs skip the exact crossing test
    struct BB {
        double xlo, xhi, ylo, yhi;
    };
    std::vector<BB> bbs;
    bbs.reserve(segs.size());
    for (const auto& s : segs) {
        Interval ax = s.a.x.to_interval(), bx = s.b.x.to_interval();
        Interval ay = s.a.y.to_interval(), by = s.b.y.to_interval();
        bbs.push_back({std::min(ax.lo, bx.lo), std::max(ax.hi, bx.hi), std::min(ay.lo, by.lo),
                       std::max(ay.hi, by.hi)});
    }
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            if (bbs[i].xhi < bbs[j].xlo || bbs[j].xhi < bbs[i].xlo ||
                bbs[i].yhi < bbs[j].ylo || bbs[j].yhi < bbs[i].ylo)
                continue;
            if (auto cx = detail::proper_crossing_x(segs[i], segs[j])) xs.push_back(*cx);
        }

    std::sort(xs.begin(), xs.end(), [](const Exact& a, const Exact& b) { return a < b; });
    xs.erase(std::unique(xs.begin(), xs.end(), [](const Exact& a, const Exact& b) { return a == b; }),
             xs.end());

    Exact half(mpq_class(1, 2));
    for (size_t k = 0; k + 1 < xs.size(); ++k) {
        if (xs[k] >= m || xs[k + 1] <= zero) continue;
        Exact x0 = xs[k] < zero ? zero : xs[k];
        Exact x1 = xs[k + 1] > m ? m : xs[k + 1];
        if (!(x0 < x1)) continue;
        Exact xm = (x0 + x1) * half;
        Interval xmi = xm.to_interval();
        std::vector<Exact> ys{zero, m};
        for (size_t si = 0; si < segs.size(); ++si) {
            if (xmi.hi < bbs[si].xlo || xmi.lo > bbs[si].xhi) continue;
            const auto& s = segs[si];
            // Segment spans xm strictly (verticals cannot: xm avoids event xs).
            Exact ax = s.a.x, bx = s.b.x;
            int c1 = (ax - xm).sign(), c2 = (bx - xm).sign();
            if (c1 == 0 || c2 == 0 || c1 == c2) continue;
            Exact t = (xm - ax) / (bx - ax);
            ys.push_back(s.a.y + t * (s.b.y - s.a.y));
        }
        std::sort(ys.begin(), ys.end(), [](const Exact& a, const Exact& b) { return a < b; });
        ys.erase(std::unique(ys.begin(), ys.end(), [](const Exact& a, const Exact& b) { return a == b; }),
                 ys.end());
        for (size_t j = 0; j + 1 < ys.size(); ++j) {
            if (ys[j] >= m || ys[j + 1] <= zero) continue;
            Exact y0 = ys[j] < zero ? zero : ys[j];
            Exact y1 = ys[j + 1] > m ? m : ys[j + 1];
            if (!(y0 < y1)) continue;
            EPt w{xm, (y0 + y1) * half};
            bool covered = false;
            for (const auto& r : regions)
                if (point_in_epolygon(w, r)) { covered = true; break; }
            if (!covered) {
                res.verdict = Verdict::False;
                res.witness = w;
                return res;
            }
        }
    }
    res.verdict = Verdict::True;
    return res;
}

// Exact point on the container boundary?
inline bool on_container_boundary(const EPt& p, const Exact& m) {
    Exact zero(0);
    bool on_line = (p.x == zero) || (p.x == m) || (p.y == zero) || (p.y == m);
    bool in_range = p.x >= zero && p.x <= m && p.y >= zero && p.y <= m;
    return on_line && in_range;
}

// Exact segment lying on one container edge line (within the edge's range)?
inline bool segment_on_container_boundary(const EPt& a, const EPt& b, const Exact& m) {
    Exact zero(0);
    auto in_box = [&](const EPt& p) {
        return p.x >= zero && p.x <= m && p.y >= zero && p.y <= m;
    };
    if (!in_box(a) || !in_box(b)) return false;
    if (a.x == zero && b.x == zero) return true;
    if (a.x == m && b.x == m) return true;
    if (a.y == zero && b.y == zero) return true;
    if (a.y == m && b.y == m) return true;
    return false;
}

} // namespace unav

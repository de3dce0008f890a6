#pragma once

// Line-resource arguments and the feasible-midpoint-region analysis.
//
// A resource line is a full vertical chord of the container; packed boxes
// meet it in pairwise disjoint open intervals, so certified per-box lower
// bounds that sum past its length force a contradiction.  When one box is
// allowed to fall short, the ordering of the chords (each contains its row's
// crossing point) pins the short box's chord inside an open window, denying
// it specific points on the line; the remaining possible centres are then
// cut down by half-plane and disk constraints and certified to lie inside a
// disk, which forces the box to cover one more point than it may.

#include "deformation.hpp"
#include "lemmas.hpp"

namespace unav {

// Vertical resource line x = line_x spanning the full container height.
struct ResourceLine {
    Exact line_x;
    Exact y0, y1;  // must be 0 and the container side
    Exact capacity() const { return y1 - y0; }
};

struct ResourceClassInput {
    std::string id;
    const ObligationClass* cls = nullptr;
    EPt covered;   // point the box certifiably covers (left of the line)
    bool full = false;  // covered point far enough for the Lemma-7 case
    Exact row_y;   // the row height; (line_x, row_y) must lie in the sweep
};

struct ChordWindow {
    std::string id;
    Exact lo, hi;  // the exceptional chord is contained in the open (lo, hi)
};

struct ResourceOutcome {
    Verdict contradiction = Verdict::Indeterminate;  // True = capacity exceeded
    std::optional<ChordWindow> window;               // present when one class is short
    Report report;
};

// Shared certification for one class: the box that owns the class's sweep
// meets the line with length > 1 regardless of which side its centre lies
// on.  Returns True only when both dichotomy cases are certified.
namespace detail {

inline Verdict full_class_bound(const ResourceLine& l, const ResourceClassInput& c,
                                Report& rep) {
    // covered point strictly left of the line
    if (!(c.covered.x < l.line_x)) {
        rep.fact(c.id + ".side", "covered point must lie strictly left of the line", false);
        return Verdict::False;
    }
    // same-side case: centre between the left container edge x = 0 and the
    // line; lemma bound with d = line_x (the edge contributes no length for a
    // packed box)
    LineBound same = parallel_lines_bound(l.line_x, rep);
    // opposite-side case: the covered point is far enough from the line
    Exact dist = l.line_x - c.covered.x;
    LineBound opp = point_behind_line_bound(dist * dist, rep);
    Verdict v = same.ok && opp.ok;
    rep.step(c.id + ".chord_gt_1",
             "box owning '" + c.id + "' meets the line with length > 1 in both centre cases", v);
    return v;
}

} // namespace detail

// classes must be ordered by increasing row_y.  When exceptional_index < 0,
// every class is certified full and the contradiction is total length
// > capacity.  Otherwise the exceptional class gets a certified chord
// window (count_below, capacity - count_above) instead.
// capacity_override exists for mutation testing only; a real run derives the
// capacity from the certified segment length.
inline ResourceOutcome line_resource_argument(const ResourceLine& l,
                                              const std::vector<ResourceClassInput>& classes,
                                              int exceptional_index,
                                              const Exact& container_side,
                                              const Exact* capacity_override = nullptr) {
    ResourceOutcome out;
    Report& rep = out.report;
    Verdict ok = Verdict::True;

    if (!(l.y0 == Exact(0) && l.y1 == container_side)) {
        rep.fact("resource.span", "resource line must span the container edge to edge", false);
        out.contradiction = Verdict::False;
        return out;
    }
    if (!(l.line_x.sign() > 0 && l.line_x < container_side)) {
        rep.fact("resource.inside", "resource line must be interior to the container", false);
        out.contradiction = Verdict::False;
        return out;
    }

    // rows strictly increasing; every sweep crosses the line at its row
    for (size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        if (i + 1 < classes.size() && !(c.row_y < classes[i + 1].row_y)) {
            rep.fact("resource.order", "classes must be ordered by row height", false);
            ok = Verdict::False;
        }
        EPt crossing{l.line_x, c.row_y};
        bool crosses = false;
        for (auto& mem : c.cls->members)
            if (point_on_polyline(crossing, mem.waypoints)) {
                crosses = true;
                break;
            }
        rep.fact(c.id + ".crosses",
                 "sweep of '" + c.id + "' contains its crossing point on the line", crosses);
        if (!crosses) ok = Verdict::False;
        // the covered point must lie on the sweep as well
        bool covered_on = false;
        for (auto& mem : c.cls->members)
            if (point_on_polyline(c.covered, mem.waypoints)) {
                covered_on = true;
                break;
            }
        rep.fact(c.id + ".covered", "covered point lies on the sweep of '" + c.id + "'",
                 covered_on);
        if (!covered_on) ok = Verdict::False;
    }

    Exact capacity = capacity_override ? *capacity_override : l.capacity();
    if (capacity_override)
        rep.note("capacity override in effect: " + capacity.str() + " instead of " +
                 l.capacity().str());
    long n_full = 0;
    for (size_t i = 0; i < classes.size(); ++i) {
        if ((int)i == exceptional_index) continue;
        Verdict v = detail::full_class_bound(l, classes[i], rep);
        ok = ok && v;
        ++n_full;
    }

    if (exceptional_index < 0) {
        // contradiction: n strict bounds of 1 each against capacity
        Verdict total = (Exact(n_full) >= capacity) ? Verdict::True : Verdict::False;
        rep.inequality("resource.total_gt_capacity",
                       "sum of strict per-box bounds exceeds the line capacity",
                       Exact(n_full).to_interval(), ">", capacity.to_interval(), total, true);
        out.contradiction = ok && total;
        return out;
    }

    // exceptional class: its chord is shorter than the slack, which must be
    // at most 1 so the same-side / close-centre cases stay contradictory
    Exact slack = capacity - Exact(n_full);
    Verdict slack_ok = (slack <= Exact(1)) ? Verdict::True : Verdict::False;
    rep.inequality("resource.slack_le_1",
                   "line capacity minus full-box bounds leaves less than one unit",
                   slack.to_interval(), "<=", Exact(1).to_interval(), slack_ok);
    ok = ok && slack_ok;

    long below = 0, above = 0;
    for (size_t i = 0; i < classes.size(); ++i) {
        if ((int)i < exceptional_index) ++below;
        if ((int)i > exceptional_index) ++above;
    }
    ChordWindow w;
    w.id = classes[(size_t)exceptional_index].id;
    w.lo = Exact(below);
    w.hi = capacity - Exact(above);
    rep.note("chord of '" + w.id + "' is contained in the open window (" + w.lo.str() + ", " +
             w.hi.str() + ") on the line");
    out.window = w;
    out.contradiction = ok;  // True here means: all derivations certified
    return out;
}

// ----------------------------------------------------- midpoint regions

struct MpConstraint {
    enum class Type { HalfPlaneXGE, DiskIn, DiskOut } type = Type::HalfPlaneXGE;
    Exact x_min;  // HalfPlaneXGE
    EPt center;   // disks
    Exact r2;     // squared radius
    std::string why;
};

struct MpCorner {
    Interval x, y;
    int c1 = -1, c2 = -1;      // constraint indices that intersect here
    Verdict feasible = Verdict::Indeterminate;
};

struct MpRegion {
    std::vector<MpConstraint> constraints;
    std::vector<MpCorner> corners;
    Interval bbox_x, bbox_y;  // certified superset of the feasible region
};

namespace detail {

inline Verdict corner_satisfies(const MpConstraint& c, const Interval& x, const Interval& y) {
    switch (c.type) {
        case MpConstraint::Type::HalfPlaneXGE:
            return cmp(x, c.x_min.to_interval(), Rel::GE);
        case MpConstraint::Type::DiskIn: {
            Interval d2 = sqr(x - c.center.x.to_interval()) + sqr(y - c.center.y.to_interval());
            return cmp(d2, c.r2.to_interval(), Rel::LE);
        }
        case MpConstraint::Type::DiskOut: {
            Interval d2 = sqr(x - c.center.x.to_interval()) + sqr(y - c.center.y.to_interval());
            return cmp(d2, c.r2.to_interval(), Rel::GE);
        }
    }
    return Verdict::Indeterminate;
}

inline Verdict classify_corner(const std::vector<MpConstraint>& cs, const Interval& x,
                               const Interval& y, int skip1, int skip2) {
    Verdict v = Verdict::True;
    for (size_t i = 0; i < cs.size(); ++i) {
        if ((int)i == skip1 || (int)i == skip2) continue;
        v = v && corner_satisfies(cs[i], x, y);
        if (v == Verdict::False) return v;
    }
    return v;
}

} // namespace detail

// All pairwise boundary intersections of the constraints, classified
// against the remaining constraints.  Tangencies are resolved exactly when
// the discriminant is an exact zero, otherwise reported indeterminate.
inline MpRegion feasible_midpoint_region(const std::vector<MpConstraint>& cs) {
    MpRegion reg;
    reg.constraints = cs;

    const MpConstraint* diskin = nullptr;
    for (auto& c : cs)
        if (c.type == MpConstraint::Type::DiskIn) diskin = &c;
    if (!diskin) throw CertError("midpoint region needs a bounding DiskIn constraint");

    auto add_corner = [&](Interval x, Interval y, int i, int j) {
        MpCorner mc;
        mc.x = x;
        mc.y = y;
        mc.c1 = i;
        mc.c2 = j;
        mc.feasible = detail::classify_corner(cs, x, y, i, j);
        reg.corners.push_back(mc);
    };

    for (size_t i = 0; i < cs.size(); ++i) {
        for (size_t j = i + 1; j < cs.size(); ++j) {
            const MpConstraint& A = cs[i];
            const MpConstraint& B = cs[j];
            bool a_line = A.type == MpConstraint::Type::HalfPlaneXGE;
            bool b_line = B.type == MpConstraint::Type::HalfPlaneXGE;
            if (a_line && b_line) continue;  // parallel vertical boundaries
            if (a_line != b_line) {
                const MpConstraint& L = a_line ? A : B;
                const MpConstraint& D = a_line ? B : A;
                Exact dx = L.x_min - D.center.x;
                Exact disc = D.r2 - dx * dx;
                int s = disc.sign();
                if (s < 0) continue;
                Interval x = L.x_min.to_interval();
                if (s == 0) {
                    add_corner(x, D.center.y.to_interval(), (int)i, (int)j);
                } else {
                    Interval h = sqrt(disc.to_interval());
                    Interval cy = D.center.y.to_interval();
                    add_corner(x, cy - h, (int)i, (int)j);
                    add_corner(x, cy + h, (int)i, (int)j);
                }
            } else {
                // circle-circle
                Exact d2 = dist2(A.center, B.center);
                if (d2.is_zero()) continue;  // concentric
                // exact tangency / separation tests via squared radii
                // (r1 +- r2)^2 = r1^2 + r2^2 +- 2 sqrt(r1^2 r2^2)
                Exact prod = A.r2 * B.r2;
                if (!prod.is_rational())
                    throw CertError("circle radii must have rational squared product");
                Exact two_r1r2 = Exact(2) * Exact::sqrt_rational(prod.rational());
                Exact sum2 = A.r2 + B.r2 + two_r1r2;
                Exact dif2 = A.r2 + B.r2 - two_r1r2;
                if (d2 > sum2 || d2 < dif2) continue;  // disjoint or nested
                // base point at parameter a/d along the centre line
                Exact a_over_d = (d2 + A.r2 - B.r2) / (Exact(2) * d2);
                Exact h2_over_d2 = A.r2 / d2 - a_over_d * a_over_d;
                EPt dir = B.center - A.center;
                Interval bx = (A.center.x + a_over_d * dir.x).to_interval();
                Interval by = (A.center.y + a_over_d * dir.y).to_interval();
                int hs = h2_over_d2.sign();
                if (hs < 0) continue;
                if (hs == 0) {
                    add_corner(bx, by, (int)i, (int)j);
                } else {
                    Interval hd = sqrt(h2_over_d2.to_interval());
                    Interval px = dir.x.to_interval() * hd;
                    Interval py = dir.y.to_interval() * hd;
                    // perpendicular offsets (-dy, dx) * h/d
                    add_corner(bx - py, by + px, (int)i, (int)j);
                    add_corner(bx + py, by - px, (int)i, (int)j);
                }
            }
        }
    }

    // certified superset: the bounding disk's box intersected with half-planes
    Interval r = sqrt(diskin->r2.to_interval());
    Interval cx = diskin->center.x.to_interval(), cy = diskin->center.y.to_interval();
    reg.bbox_x = Interval((cx - r).lo, (cx + r).hi);
    reg.bbox_y = Interval((cy - r).lo, (cy + r).hi);
    for (auto& c : cs)
        if (c.type == MpConstraint::Type::HalfPlaneXGE)
            reg.bbox_x = Interval(std::max(reg.bbox_x.lo, c.x_min.to_interval().lo), reg.bbox_x.hi);
    return reg;
}

// Certify that every point of the feasible region lies within radius r of
// the target: the maximum of the (convex) distance over the compact region
// is attained at a boundary intersection or at a circle's far point, so
// checking those candidates suffices.  Vacuously true for an empty region.
inline Verdict region_in_disk(const MpRegion& reg, const EPt& target, const Exact& radius,
                              Report& rep) {
    Interval tx = target.x.to_interval(), ty = target.y.to_interval();
    Interval r2 = (radius * radius).to_interval();
    Verdict all = Verdict::True;
    int candidates = 0;

    auto check_candidate = [&](const Interval& x, const Interval& y, const std::string& what) {
        Interval d2 = sqr(x - tx) + sqr(y - ty);
        Verdict v = cmp(d2, r2, Rel::LE);
        rep.inequality("region.candidate", what + " lies within the target disk", d2, "<=", r2,
                       v);
        all = all && v;
        ++candidates;
    };

    for (auto& c : reg.corners) {
        if (c.feasible == Verdict::False) continue;
        check_candidate(c.x, c.y, "boundary intersection");
    }
    for (size_t i = 0; i < reg.constraints.size(); ++i) {
        const auto& c = reg.constraints[i];
        if (c.type == MpConstraint::Type::HalfPlaneXGE) continue;
        // far point of this circle from the target
        Interval cx = c.center.x.to_interval(), cy = c.center.y.to_interval();
        Interval dx = cx - tx, dy = cy - ty;
        Interval n2 = sqr(dx) + sqr(dy);
        Exact n2_exact = dist2(c.center, target);
        if (n2_exact.is_zero()) {
            // target at the circle centre: the far set is the whole circle,
            // at exact distance sqrt(r2); decided exactly (equality counts)
            Verdict v = (c.r2 <= radius * radius) ? Verdict::True : Verdict::False;
            rep.inequality("region.candidate", "circle radius within the target disk",
                           sqrt(c.r2.to_interval()), "<=", radius.to_interval(), v);
            all = all && v;
            continue;
        }
        Interval n = sqrt(n2);
        Interval rc = sqrt(c.r2.to_interval());
        Interval fx = cx + dx * rc / n;
        Interval fy = cy + dy * rc / n;
        Verdict on_region = detail::classify_corner(reg.constraints, fx, fy, (int)i, -1);
        if (on_region == Verdict::False) continue;
        check_candidate(fx, fy, "circle far point");
    }
    if (candidates == 0) {
        rep.note("feasible region is empty; containment holds vacuously");
        return Verdict::True;
    }
    return all;
}

} // namespace unav

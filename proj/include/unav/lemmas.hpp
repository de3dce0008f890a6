#pragma once

// The unavoidability lemmas as applicability-checked predicates.
//
// A lemma application carries a region in container coordinates with a fixed
// vertex role order; the canonical frame is implicit in the roles and is
// validated structurally (perpendicularity, unit lengths) rather than via an
// explicit rigid-motion field.  The lemmas themselves are trusted; what is
// machine-checked is that their hypotheses certifiably hold and that their
// conclusion disjuncts are all harmless for a packed box: anchors are
// configuration points and every escape (edge or boundary anchor) lies on
// the container boundary.
//
// Role orders:
//   Triangle              region = [V0, V1, V2], anchors = the vertices
//   RectEdge              region = [E0, E1, S, T]; E0->E1 escape edge,
//                         T = E0 + h, S = E1 + h with h perpendicular to E0E1
//   QuadEdge/SmallA       region = [E0, E1, S, T]; E0->E1 escape edge (len a),
//                         T = E0 + u with |u| = 1, u perp E0E1,
//                         S = E1 + b*u
//
// Line lemmas (guaranteed_line_intersection) return certified lower bounds
// on |B ∩ l|; strictness comes from box side > 1, recorded per application.

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exact.hpp"
#include "fcurve.hpp"
#include "geometry.hpp"
#include "report.hpp"

namespace unav {

enum class LemmaKind {
    Triangle,
    RectEdge,
    QuadEdge,
    QuadEdgeSmallA,
    CloseLine,
    ParallelLines,
    PointBehindLine,
};

inline const char* kind_name(LemmaKind k) {
    switch (k) {
        case LemmaKind::Triangle: return "triangle";
        case LemmaKind::RectEdge: return "rect_edge";
        case LemmaKind::QuadEdge: return "quad_edge";
        case LemmaKind::QuadEdgeSmallA: return "quad_edge_small_a";
        case LemmaKind::CloseLine: return "close_line";
        case LemmaKind::ParallelLines: return "parallel_lines";
        case LemmaKind::PointBehindLine: return "point_behind_line";
    }
    return "?";
}

struct CertError : std::runtime_error {
    explicit CertError(const std::string& w) : std::runtime_error(w) {}
};

struct Anchor {
    std::string point_id;  // empty for boundary anchors
    EPt pos;
    bool boundary = false;
};

struct LemmaApp {
    std::string id;
    LemmaKind kind = LemmaKind::Triangle;
    std::vector<EPt> region;  // role-ordered, see header comment
    std::vector<Anchor> anchors;
    std::vector<std::pair<EPt, EPt>> escapes;
    std::string rect_convention = "top_corners";  // or "literal_0a"
};

namespace detail {

inline Interval exact_cmp_report(Report& rep, const std::string& id, const std::string& text,
                                 const Exact& lhs, const std::string& rel, const Exact& rhs,
                                 Verdict v, bool strict = false) {
    Interval li = lhs.to_interval(), ri = rhs.to_interval();
    rep.inequality(id, text, li, rel, ri, v, strict);
    return li;
}

// Exact three-way checks rendered into the report.
inline Verdict check_le(Report& rep, const std::string& id, const std::string& text,
                        const Exact& lhs, const Exact& rhs) {
    Verdict v = (lhs <= rhs) ? Verdict::True : Verdict::False;
    exact_cmp_report(rep, id, text, lhs, "<=", rhs, v);
    return v;
}
inline Verdict check_lt(Report& rep, const std::string& id, const std::string& text,
                        const Exact& lhs, const Exact& rhs) {
    Verdict v = (lhs < rhs) ? Verdict::True : Verdict::False;
    exact_cmp_report(rep, id, text, lhs, "<", rhs, v);
    return v;
}

// The positive unit step of d if d is axis-aligned, else nullopt.
inline std::optional<Exact> axis_length(const EPt& d) {
    if (d.x.is_zero()) return d.y.sign() >= 0 ? d.y : -d.y;
    if (d.y.is_zero()) return d.x.sign() >= 0 ? d.x : -d.x;
    return std::nullopt;
}

} // namespace detail

// Geometry of the canonical frame, derived from the role-ordered region.
struct QuadFrame {
    Exact a, b;   // canonical parameters
    EPt unit;     // canonical +y direction in container coordinates (|unit| = 1)
    EPt e0, e1, s, t;
};

inline QuadFrame derive_quad_frame(const std::vector<EPt>& region) {
    if (region.size() != 4) throw CertError("quad application must have 4 region vertices");
    QuadFrame f;
    f.e0 = region[0];
    f.e1 = region[1];
    f.s = region[2];
    f.t = region[3];
    EPt u = f.t - f.e0;
    if (dist2(f.t, f.e0) != Exact(1))
        throw CertError("quad frame: |T - E0| must be exactly 1");
    EPt e = f.e1 - f.e0;
    if (!(edot(u, e) == Exact(0)))
        throw CertError("quad frame: escape edge must be perpendicular to the unit side");
    f.unit = u;
    // a = component of E1-E0 along the in-frame +x axis; orientation-free via |a|.
    auto alen = detail::axis_length(e);
    if (alen) {
        f.a = *alen;
    } else {
        Exact d2 = dist2(f.e1, f.e0);
        if (!d2.is_rational()) throw CertError("quad frame: unsupported escape edge direction");
        f.a = Exact::sqrt_rational(d2.rational());
    }
    if (f.a.sign() <= 0) throw CertError("quad frame: degenerate escape edge");
    // S must be E1 + b*u for some b > 0.
    EPt sv = f.s - f.e1;
    Exact b = edot(sv, u);
    EPt expected{f.e1.x + b * u.x, f.e1.y + b * u.y};
    if (!(expected == f.s)) throw CertError("quad frame: S must lie on E1 + b*unit");
    if (b.sign() <= 0) throw CertError("quad frame: b must be positive");
    f.b = b;
    return f;
}

struct RectFrame {
    Exact a, b;
    EPt e0, e1, s, t;
};

inline RectFrame derive_rect_frame(const std::vector<EPt>& region) {
    if (region.size() != 4) throw CertError("rect application must have 4 region vertices");
    RectFrame f;
    f.e0 = region[0];
    f.e1 = region[1];
    f.s = region[2];
    f.t = region[3];
    EPt e = f.e1 - f.e0;
    EPt h = f.t - f.e0;
    if (!(edot(e, h) == Exact(0)))
        throw CertError("rect frame: sides must be perpendicular");
    if (!(f.s == f.e1 + h)) throw CertError("rect frame: S must equal E1 + (T - E0)");
    auto alen = detail::axis_length(e);
    auto blen = detail::axis_length(h);
    if (!alen || !blen) throw CertError("rect frame: only axis-aligned rectangles supported");
    f.a = *alen;
    f.b = *blen;
    if (f.a.sign() <= 0 || f.b.sign() <= 0) throw CertError("rect frame: degenerate rectangle");
    return f;
}

// Configuration points of one color, as needed by anchor resolution.
struct AnchorContext {
    const std::map<std::string, EPt>* points = nullptr;  // id -> position
    Exact container;
};

namespace detail {

inline Verdict check_anchor(Report& rep, const std::string& app_id, const Anchor& an,
                            const AnchorContext& ctx, const EPt& expected_pos) {
    if (!(an.pos == expected_pos)) {
        rep.fact(app_id + ".anchor", "anchor position does not match the canonical frame",
                 false);
        return Verdict::False;
    }
    if (an.boundary) {
        bool ok = on_container_boundary(an.pos, ctx.container);
        rep.fact(app_id + ".anchor_boundary",
                 "boundary anchor lies on the container boundary", ok);
        return ok ? Verdict::True : Verdict::False;
    }
    auto it = ctx.points->find(an.point_id);
    if (it == ctx.points->end()) {
        rep.fact(app_id + ".anchor", "anchor '" + an.point_id + "' is not a configuration point",
                 false);
        return Verdict::False;
    }
    if (!(it->second == an.pos)) {
        rep.fact(app_id + ".anchor",
                 "anchor '" + an.point_id + "' position differs from the configuration", false);
        return Verdict::False;
    }
    return Verdict::True;
}

inline Verdict check_escapes(Report& rep, const std::string& app_id, const LemmaApp& app,
                             const Exact& m) {
    for (auto& [p, q] : app.escapes) {
        if (!segment_on_container_boundary(p, q, m)) {
            rep.fact(app_id + ".escape", "escape edge does not lie on the container boundary",
                     false);
            return Verdict::False;
        }
    }
    return Verdict::True;
}

} // namespace detail

// Applicability check for the region lemmas.  True only when every
// hypothesis is certified and every conclusion disjunct is accounted for.
inline Verdict check_lemma(const LemmaApp& app, const AnchorContext& ctx, Report& rep) {
    const Exact& m = ctx.container;
    Verdict out = Verdict::True;
    auto merge = [&out](Verdict v) { out = out && v; };

    switch (app.kind) {
        case LemmaKind::Triangle: {
            if (app.region.size() != 3) throw CertError("triangle must have 3 vertices");
            if (app.anchors.size() != 3) throw CertError("triangle must have 3 anchors");
            for (int i = 0; i < 3; ++i) {
                Exact d2 = dist2(app.region[i], app.region[(i + 1) % 3]);
                merge(detail::check_le(rep, "lemma.tri_side_le_1",
                                       "triangle side length <= 1", d2, Exact(1)));
            }
            // anchors must be exactly the vertex set, in order
            for (int i = 0; i < 3; ++i)
                merge(detail::check_anchor(rep, app.id, app.anchors[i], ctx, app.region[i]));
            merge(detail::check_escapes(rep, app.id, app, m));
            break;
        }
        case LemmaKind::RectEdge: {
            RectFrame f = derive_rect_frame(app.region);
            merge(detail::check_le(rep, "lemma.rect_a_le_1", "rectangle width a <= 1", f.a,
                                   Exact(1)));
            merge(detail::check_le(rep, "lemma.rect_b_le_1", "rectangle height b <= 1", f.b,
                                   Exact(1)));
            merge(detail::check_le(rep, "lemma.rect_a2b_le_2sqrt2",
                                   "rectangle a + 2b <= 2*sqrt(2)", f.a + Exact(2) * f.b,
                                   Exact(2) * sqrt2()));
            if (app.anchors.size() != 2) throw CertError("rect_edge needs 2 anchors");
            if (app.escapes.empty()) throw CertError("rect_edge needs its escape edge");
            EPt t_expect = f.t, s_expect = f.s;
            if (app.rect_convention == "literal_0a") {
                // literal reading of the corner pair: (0, a) and (a, b)
                EPt unit{(f.t.x - f.e0.x) / f.b, (f.t.y - f.e0.y) / f.b};
                t_expect = EPt{f.e0.x + f.a * unit.x, f.e0.y + f.a * unit.y};
            }
            merge(detail::check_anchor(rep, app.id, app.anchors[0], ctx, t_expect));
            merge(detail::check_anchor(rep, app.id, app.anchors[1], ctx, s_expect));
            merge(detail::check_escapes(rep, app.id, app, m));
            // the escape edge must be the E0->E1 side
            if (!((app.escapes[0].first == f.e0 && app.escapes[0].second == f.e1) ||
                  (app.escapes[0].first == f.e1 && app.escapes[0].second == f.e0)))
                throw CertError("rect_edge escape must be the E0-E1 side");
            break;
        }
        case LemmaKind::QuadEdge:
        case LemmaKind::QuadEdgeSmallA: {
            QuadFrame f = derive_quad_frame(app.region);
            Exact lim = Exact(2) * sqrt2() - Exact(2);
            if (app.kind == LemmaKind::QuadEdge) {
                merge(detail::check_lt(rep, "lemma.quad_a_gt_2sqrt2m2",
                                       "quad parameter a > 2*sqrt(2)-2", lim, f.a));
                merge(detail::check_lt(rep, "lemma.quad_a_lt_1", "quad parameter a < 1", f.a,
                                       Exact(1)));
                merge(detail::check_lt(rep, "lemma.quad_b_gt_0", "quad parameter b > 0", Exact(0),
                                       f.b));
                merge(detail::check_lt(rep, "lemma.quad_b_lt_1", "quad parameter b < 1", f.b,
                                       Exact(1)));
            } else {
                merge(detail::check_lt(rep, "lemma.smalla_a_gt_0", "quad parameter a > 0",
                                       Exact(0), f.a));
                merge(detail::check_lt(rep, "lemma.smalla_a_lt_2sqrt2m2",
                                       "quad parameter a < 2*sqrt(2)-2", f.a, lim));
                merge(detail::check_lt(rep, "lemma.smalla_b_gt_0", "quad parameter b > 0",
                                       Exact(0), f.b));
                merge(detail::check_le(rep, "lemma.smalla_b_le_1", "quad parameter b <= 1", f.b,
                                       Exact(1)));
            }
            merge(detail::check_le(rep, "lemma.quad_anchor_dist_le_1",
                                   "distance from (a,b) to (0,1) <= 1", dist2(f.s, f.t),
                                   Exact(1)));
            if (app.kind == LemmaKind::QuadEdge) {
                Exact lo_lim = Exact(2) * sqrt2() - Exact(2);
                if (f.a > lo_lim && f.a < Exact(1)) {
                    FCurvePoint fc = eval_f(f.a);
                    Interval bi = f.b.to_interval();
                    Verdict v = (bi.hi < fc.f_value.lo)
                                    ? Verdict::True
                                    : (bi.lo >= fc.f_value.hi ? Verdict::False
                                                              : Verdict::Indeterminate);
                    rep.inequality("lemma.quad_b_lt_f_a", "quad parameter b < f(a)", bi, "<",
                                   fc.f_value, v);
                    merge(v);
                }
                // when a is out of range the checks above already yield False
            }
            if (app.anchors.size() != 2) throw CertError("quad needs 2 anchors");
            if (app.escapes.empty()) throw CertError("quad needs its escape edge");
            merge(detail::check_anchor(rep, app.id, app.anchors[0], ctx, f.t));
            merge(detail::check_anchor(rep, app.id, app.anchors[1], ctx, f.s));
            merge(detail::check_escapes(rep, app.id, app, m));
            if (!((app.escapes[0].first == f.e0 && app.escapes[0].second == f.e1) ||
                  (app.escapes[0].first == f.e1 && app.escapes[0].second == f.e0)))
                throw CertError("quad escape must be the E0-E1 side");
            break;
        }
        default:
            throw CertError("check_lemma: not a region lemma kind");
    }
    return out;
}

// Region polygon of an application, CCW-normalized, for coverage checking.
inline EPolygon app_polygon(const LemmaApp& app) {
    EPolygon poly{app.region};
    Exact area;
    size_t n = poly.v.size();
    for (size_t i = 0; i < n; ++i) area = area + ecross(poly.v[i], poly.v[(i + 1) % n]);
    if (area.sign() < 0) std::reverse(poly.v.begin(), poly.v.end());
    return poly;
}

// ------------------------------------------------------- line lemma bounds

struct LineBound {
    Interval bound;       // certified lower bound on |B ∩ l|
    bool strict = false;  // strictly exceeded because box side > 1
    Verdict ok = Verdict::Indeterminate;
};

// Lemma: a line within (sqrt(2)-1)/2 of the box centre meets the box in
// length > 1.  dist2_to_line is the exact squared distance.
inline LineBound close_line_bound(const Exact& dist2_to_line, Report& rep) {
    LineBound lb;
    Exact thr = (sqrt2() - Exact(1)) * frac(1, 2);
    Verdict v = (dist2_to_line <= thr * thr) ? Verdict::True : Verdict::False;
    detail::exact_cmp_report(rep, "resource.close_line_dist",
                             "centre-to-line distance <= (sqrt(2)-1)/2 (squared form)",
                             dist2_to_line, "<=", thr * thr, v);
    lb.bound = Interval::exact(1.0);
    lb.strict = true;
    lb.ok = v;
    return lb;
}

// Lemma: centre between two parallel lines at distance d <= 1 forces a
// combined intersection of at least min{1, 2*sqrt(2)-2d}; strict for
// side > 1.  The caller certifies the second line carries no length for a
// packed box (it is a container edge).
inline LineBound parallel_lines_bound(const Exact& d, Report& rep) {
    LineBound lb;
    Verdict v1 = detail::check_le(rep, "resource.parallel_d_le_1",
                                  "parallel line distance d <= 1", d, Exact(1));
    Exact raw = Exact(2) * sqrt2() - Exact(2) * d;
    Exact bound = raw < Exact(1) ? raw : Exact(1);
    Verdict v2 = (bound >= Exact(1)) ? Verdict::True : Verdict::False;
    detail::exact_cmp_report(rep, "resource.parallel_bound_ge_1",
                             "min{1, 2*sqrt(2)-2d} >= 1 (boundary case handled strictly)", bound,
                             ">=", Exact(1), v2, true);
    lb.bound = bound.to_interval();
    lb.strict = true;
    lb.ok = v1 && v2;
    return lb;
}

// Lemma: box covers P, P farther than 0.51 from l, centre on the opposite
// side: |B ∩ l| > 1.  The internal chain 0.505*sqrt(2) - 0.51 < (sqrt(2)-1)/2
// is certified alongside.
inline LineBound point_behind_line_bound(const Exact& dist2_p_to_line, Report& rep) {
    LineBound lb;
    Exact thr = frac(51, 100);
    Verdict v = (dist2_p_to_line > thr * thr) ? Verdict::True : Verdict::False;
    detail::exact_cmp_report(rep, "resource.point_dist_gt_051",
                             "covered point distance to l > 0.51 (squared form)",
                             dist2_p_to_line, ">", thr * thr, v);
    Exact chain_l = frac(101, 200) * sqrt2() - frac(51, 100);
    Exact chain_r = (sqrt2() - Exact(1)) * frac(1, 2);
    Verdict vc = (chain_l < chain_r) ? Verdict::True : Verdict::False;
    detail::exact_cmp_report(rep, "resource.lemma7_chain",
                             "0.505*sqrt(2) - 0.51 < (sqrt(2)-1)/2", chain_l, "<", chain_r, vc);
    lb.bound = Interval::exact(1.0);
    lb.strict = true;
    lb.ok = v && vc;
    return lb;
}

// ------------------------------------------------- Monte-Carlo lemma check
//
// Testing aid, not proof: sample boxes with centre in the region and verify
// the lemma's conclusion (contains an anchor or meets an escape line / a
// boundary anchor's supporting edge).  Plain double arithmetic.

struct McResult {
    long samples = 0;
    long violations = 0;
};

namespace detail {

struct DPt {
    double x, y;
};

inline bool dbox_contains(double cx, double cy, double c, double s, double half, DPt p) {
    double dx = p.x - cx, dy = p.y - cy;
    double u = dx * c + dy * s;
    double v = -dx * s + dy * c;
    return std::abs(u) < half && std::abs(v) < half;
}

} // namespace detail

inline McResult monte_carlo_lemma_check(const LemmaApp& app, long samples, uint64_t seed) {
    McResult res;
    // fan-triangulate the region for uniform sampling
    std::vector<detail::DPt> verts;
    for (auto& v : app.region) verts.push_back({v.x.approx(), v.y.approx()});
    std::vector<std::array<detail::DPt, 3>> tris;
    std::vector<double> areas;
    double total_area = 0.0;
    for (size_t i = 1; i + 1 < verts.size(); ++i) {
        std::array<detail::DPt, 3> t{verts[0], verts[i], verts[i + 1]};
        double a = std::abs((t[1].x - t[0].x) * (t[2].y - t[0].y) -
                            (t[1].y - t[0].y) * (t[2].x - t[0].x)) *
                   0.5;
        tris.push_back(t);
        areas.push_back(a);
        total_area += a;
    }
    std::vector<detail::DPt> anchor_pts;
    for (auto& an : app.anchors) anchor_pts.push_back({an.pos.x.approx(), an.pos.y.approx()});
    struct Line {
        double px, py, nx, ny;  // point + unit normal
    };
    std::vector<Line> escape_lines;
    for (auto& [p, q] : app.escapes) {
        double px = p.x.approx(), py = p.y.approx();
        double qx = q.x.approx(), qy = q.y.approx();
        double dx = qx - px, dy = qy - py;
        double len = std::hypot(dx, dy);
        if (len == 0) continue;
        escape_lines.push_back({px, py, -dy / len, dx / len});
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 1.5707963267948966);
    std::uniform_real_distribution<double> sided(1.0000001, 1.01);
    for (long it = 0; it < samples; ++it) {
        // sample centre in the region
        double pick = unit(rng) * total_area;
        size_t ti = 0;
        while (ti + 1 < tris.size() && pick > areas[ti]) pick -= areas[ti], ++ti;
        double r1 = std::sqrt(unit(rng)), r2 = unit(rng);
        const auto& t = tris[ti];
        double cx = (1 - r1) * t[0].x + r1 * (1 - r2) * t[1].x + r1 * r2 * t[2].x;
        double cy = (1 - r1) * t[0].y + r1 * (1 - r2) * t[1].y + r1 * r2 * t[2].y;
        double th = angle(rng), sd = sided(rng);
        double c = std::cos(th), s = std::sin(th), half = 0.5 * sd;
        ++res.samples;
        bool ok = false;
        for (auto& p : anchor_pts)
            if (detail::dbox_contains(cx, cy, c, s, half, p)) { ok = true; break; }
        if (!ok) {
            // box meets an escape line iff the centre's distance to the line is
            // below the box's half-extent along the line normal
            for (auto& L : escape_lines) {
                double dist = std::abs((cx - L.px) * L.nx + (cy - L.py) * L.ny);
                double ext = half * (std::abs(c * L.nx + s * L.ny) +
                                     std::abs(-s * L.nx + c * L.ny));
                if (dist < ext) { ok = true; break; }
            }
        }
        if (!ok) ++res.violations;
    }
    return res;
}

} // namespace unav

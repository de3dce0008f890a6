#pragma once

// Row-lattice decompositions, parameterized over affine functions of a
// schedule parameter t in [0,1].
//
// The configurations in scope are rows of points: a bottom strip against
// y = 0, a top strip against y = m, triangle fans between adjacent rows, and
// column quads against the left/right container edges.  Coordinates are
// affine in t (constant for static certificates), so one generator authors
// both the shipped certificates (t = 0) and the deforming decompositions
// used by movement schedules.  Nothing authored here is trusted: the static
// checker re-derives every hypothesis, and the schedule checker certifies
// them as polynomials in t.

#include <set>

#include "certificate.hpp"
#include "lemmas.hpp"

namespace unav {

// Affine form c0 + c1*t on t in [0,1].
struct Aff {
    Exact c0, c1;

    Aff() = default;
    explicit Aff(Exact constant) : c0(std::move(constant)) {}
    Aff(Exact v0, Exact slope) : c0(std::move(v0)), c1(std::move(slope)) {}

    static Aff between(const Exact& from, const Exact& to) { return Aff(from, to - from); }

    bool is_const() const { return c1.is_zero(); }
    Exact at0() const { return c0; }
    Exact at1() const { return c0 + c1; }
    Exact at(const mpq_class& t) const { return c0 + c1 * Exact(t); }

    friend Aff operator+(const Aff& a, const Aff& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
    friend Aff operator-(const Aff& a, const Aff& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
    Aff operator-() const { return {-c0, -c1}; }
    friend Aff operator*(const Exact& s, const Aff& a) { return {s * a.c0, s * a.c1}; }
    friend bool operator==(const Aff& a, const Aff& b) { return a.c0 == b.c0 && a.c1 == b.c1; }
};

// Quadratic polynomial in t with exact coefficients; sign certification on
// [0,1] is decidable (endpoints plus the interior critical point).
struct Poly2 {
    Exact p0, p1, p2;

    static Poly2 from(const Aff& a) { return {a.c0, a.c1, Exact(0)}; }
    static Poly2 constant(const Exact& c) { return {c, Exact(0), Exact(0)}; }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        return {a.p0 + b.p0, a.p1 + b.p1, a.p2 + b.p2};
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) {
        return {a.p0 - b.p0, a.p1 - b.p1, a.p2 - b.p2};
    }

    Exact eval(const mpq_class& t) const {
        Exact T(t);
        return p0 + p1 * T + p2 * T * T;
    }

    // max of p over [0,1] is attained at an endpoint or, when p2 < 0, at the
    // interior critical point; min symmetrically.  Both are exact.
    Exact max01() const {
        Exact best = p0;
        Exact e1 = p0 + p1 + p2;
        if (e1 > best) best = e1;
        if (p2.sign() < 0) {
            // t* = -p1/(2 p2)
            Exact denom = Exact(2) * p2;
            Exact tstar = -p1 / denom;
            if (tstar.sign() > 0 && tstar < Exact(1)) {
                Exact v = p0 - p1 * p1 / (Exact(4) * p2);
                if (v > best) best = v;
            }
        }
        return best;
    }
    Exact min01() const {
        Exact best = p0;
        Exact e1 = p0 + p1 + p2;
        if (e1 < best) best = e1;
        if (p2.sign() > 0) {
            Exact denom = Exact(2) * p2;
            Exact tstar = -p1 / denom;
            if (tstar.sign() > 0 && tstar < Exact(1)) {
                Exact v = p0 - p1 * p1 / (Exact(4) * p2);
                if (v < best) best = v;
            }
        }
        return best;
    }

    bool le01(const Exact& bound) const { return max01() <= bound; }
    bool lt01(const Exact& bound) const { return max01() < bound; }
    bool ge01(const Exact& bound) const { return min01() >= bound; }
    bool gt01(const Exact& bound) const { return min01() > bound; }
    bool is_zero() const { return p0.is_zero() && p1.is_zero() && p2.is_zero(); }
};

inline Poly2 mul(const Aff& a, const Aff& b) {
    return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c1 * b.c1};
}

struct APt {
    Aff x, y;

    EPt at0() const { return {x.at0(), y.at0()}; }
    EPt at1() const { return {x.at1(), y.at1()}; }
    friend APt operator-(const APt& a, const APt& b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(const APt& a, const APt& b) { return a.x == b.x && a.y == b.y; }
};

inline Poly2 dist2(const APt& a, const APt& b) {
    Aff dx = a.x - b.x, dy = a.y - b.y;
    return mul(dx, dx) + mul(dy, dy);
}
inline Poly2 across(const APt& a, const APt& b) { return mul(a.x, b.y) - mul(a.y, b.x); }

struct AAnchor {
    std::string point_id;  // empty for boundary anchors
    APt pos;
    bool boundary = false;
};

struct AApp {
    std::string id;
    LemmaKind kind = LemmaKind::Triangle;
    std::vector<APt> region;  // role-ordered as in LemmaApp
    std::vector<AAnchor> anchors;
    std::vector<std::pair<APt, APt>> escapes;
};

inline LemmaApp instantiate(const AApp& a, int endpoint) {
    LemmaApp app;
    app.id = a.id;
    app.kind = a.kind;
    auto pt = [&](const APt& p) { return endpoint == 0 ? p.at0() : p.at1(); };
    for (auto& v : a.region) app.region.push_back(pt(v));
    for (auto& an : a.anchors) app.anchors.push_back({an.point_id, pt(an.pos), an.boundary});
    for (auto& [p, q] : a.escapes) app.escapes.emplace_back(pt(p), pt(q));
    return app;
}

// ------------------------------------------------------- row lattice model

struct ARowPoint {
    std::string id;
    Aff x;
};

struct ARow {
    Aff y;
    std::vector<ARowPoint> pts;  // sorted by x at t=0
};

// Rows of one color extracted from a row-tagged configuration.
inline std::vector<ARow> rows_from_config(const Configuration& config,
                                          const std::string& color) {
    std::map<int, ARow> by_row;
    for (auto& p : config.points) {
        if (p.color != color) continue;
        if (p.row < 0) throw CertError("configuration is not row-structured (missing row tags)");
        auto& r = by_row[p.row];
        if (r.pts.empty()) r.y = Aff(p.pos.y);
        else if (!(r.y == Aff(p.pos.y)))
            throw CertError("row " + std::to_string(p.row) + " has inconsistent heights");
        r.pts.push_back({p.id, Aff(p.pos.x)});
    }
    std::vector<ARow> rows;
    for (auto& [idx, r] : by_row) rows.push_back(r);
    for (auto& r : rows)
        std::sort(r.pts.begin(), r.pts.end(),
                  [](const ARowPoint& a, const ARowPoint& b) { return a.x.at0() < b.x.at0(); });
    // rows must come out bottom to top
    for (size_t i = 0; i + 1 < rows.size(); ++i)
        if (!(rows[i].y.at0() < rows[i + 1].y.at0()))
            throw CertError("rows are not ordered by height");
    return rows;
}

// ------------------------------------------------------------- generator

namespace lattice_detail {

inline APt apt(const Aff& x, const Aff& y) { return {x, y}; }

// Horizontal strip cell against the bottom (edge_y = 0) or top (edge_y = m)
// container edge.
inline AApp strip_rect(const std::string& id, const Exact& m, bool bottom, const Aff& row_y,
                       const Aff& x0, const Aff& x1, const std::string& left_id,
                       const std::string& right_id) {
    Aff edge_y{bottom ? Exact(0) : m};
    AApp app;
    app.id = id;
    app.kind = LemmaKind::RectEdge;
    APt e0 = apt(x0, edge_y), e1 = apt(x1, edge_y);
    APt t = apt(x0, row_y), s = apt(x1, row_y);
    app.region = {e0, e1, s, t};
    AAnchor at{left_id, t, left_id.empty()};
    AAnchor as{right_id, s, right_id.empty()};
    app.anchors = {at, as};
    app.escapes = {{e0, e1}};
    return app;
}

} // namespace lattice_detail

// Decompose the container [0,m]^2 for the given rows.  Region anchoring
// assumes the lattice conventions: the column quads' unit side ends on a row
// whose extreme point sits at x = 1 (left) or x = m-1 (right).
inline std::vector<AApp> build_lattice_apps(const Exact& m, const std::vector<ARow>& rows,
                                            const std::string& prefix = "") {
    using lattice_detail::apt;
    if (rows.size() < 2) throw CertError("lattice decomposition needs at least two rows");
    std::vector<AApp> apps;

    // bottom strip
    {
        const ARow& r0 = rows.front();
        for (size_t k = 0; k + 1 <= r0.pts.size(); ++k) {
            Aff x0 = (k == 0) ? Aff(Exact(0)) : r0.pts[k - 1].x;
            Aff x1 = (k == r0.pts.size()) ? Aff(m) : r0.pts[k].x;
            std::string left = (k == 0) ? "" : r0.pts[k - 1].id;
            std::string right = (k == r0.pts.size()) ? "" : r0.pts[k].id;
            apps.push_back(lattice_detail::strip_rect(prefix + "b_rect_" + std::to_string(k), m,
                                                      true, r0.y, x0, x1, left, right));
        }
        // rightmost cell
        size_t k = r0.pts.size();
        apps.push_back(lattice_detail::strip_rect(prefix + "b_rect_" + std::to_string(k), m,
                                                  true, r0.y, r0.pts.back().x, Aff(m),
                                                  r0.pts.back().id, ""));
    }
    // top strip
    {
        const ARow& rt = rows.back();
        for (size_t k = 0; k + 1 <= rt.pts.size(); ++k) {
            Aff x0 = (k == 0) ? Aff(Exact(0)) : rt.pts[k - 1].x;
            Aff x1 = (k == rt.pts.size()) ? Aff(m) : rt.pts[k].x;
            std::string left = (k == 0) ? "" : rt.pts[k - 1].id;
            std::string right = (k == rt.pts.size()) ? "" : rt.pts[k].id;
            apps.push_back(lattice_detail::strip_rect(prefix + "t_rect_" + std::to_string(k), m,
                                                      false, rt.y, x0, x1, left, right));
        }
        size_t k = rt.pts.size();
        apps.push_back(lattice_detail::strip_rect(prefix + "t_rect_" + std::to_string(k), m,
                                                  false, rt.y, rt.pts.back().x, Aff(m),
                                                  rt.pts.back().id, ""));
    }

    Exact half = frac(1, 2);
    Exact small_a_lim = Exact(2) * sqrt2() - Exact(2);

    // strips between adjacent rows
    for (size_t r = 0; r + 1 < rows.size(); ++r) {
        const ARow& lo = rows[r];
        const ARow& up = rows[r + 1];
        std::string sp = prefix + "s" + std::to_string(r) + "_";

        // merged sequence, alternating between the two rows; ordering uses the
        // mid-parameter positions so endpoint ties (a slid point returning to
        // x = 1) do not garble the interleave
        struct Item {
            const ARowPoint* p;
            const ARow* row;
        };
        std::vector<Item> seq;
        {
            mpq_class half_t(1, 2);
            size_t i = 0, j = 0;
            while (i < lo.pts.size() || j < up.pts.size()) {
                bool take_lo;
                if (i == lo.pts.size()) take_lo = false;
                else if (j == up.pts.size()) take_lo = true;
                else take_lo = lo.pts[i].x.at(half_t) < up.pts[j].x.at(half_t);
                if (take_lo) seq.push_back({&lo.pts[i++], &lo});
                else seq.push_back({&up.pts[j++], &up});
            }
        }
        for (size_t k = 0; k + 1 < seq.size(); ++k)
            if (seq[k].row == seq[k + 1].row)
                throw CertError("rows do not interleave between strip points");

        // triangles over consecutive triples
        for (size_t k = 0; k + 2 < seq.size(); ++k) {
            AApp tri;
            tri.id = sp + "tri_" + std::to_string(k);
            tri.kind = LemmaKind::Triangle;
            for (int d = 0; d < 3; ++d) {
                const Item& it = seq[k + d];
                tri.region.push_back(apt(it.p->x, it.row->y));
                tri.anchors.push_back({it.p->id, apt(it.p->x, it.row->y), false});
            }
            apps.push_back(std::move(tri));
        }

        // column quads at both container edges
        auto make_quad = [&](bool left_side) {
            const ARowPoint& lo_ext = left_side ? lo.pts.front() : lo.pts.back();
            const ARowPoint& up_ext = left_side ? up.pts.front() : up.pts.back();
            Exact unit_x = left_side ? Exact(1) : m - Exact(1);
            // the T row is the one whose extreme point is pinned at x = 1 / m-1
            const ARow* trow;
            const ARowPoint* tpt;
            const ARow* srow;
            const ARowPoint* spt;
            if (lo_ext.x.is_const() && lo_ext.x.at0() == unit_x) {
                trow = &lo;
                tpt = &lo_ext;
                srow = &up;
                spt = &up_ext;
            } else if (up_ext.x.is_const() && up_ext.x.at0() == unit_x) {
                trow = &up;
                tpt = &up_ext;
                srow = &lo;
                spt = &lo_ext;
            } else {
                throw CertError("no pinned unit-offset row for the column quad in strip " + sp);
            }
            Aff edge_x{left_side ? Exact(0) : m};
            APt e0 = apt(edge_x, trow->y);
            APt e1 = apt(edge_x, srow->y);
            APt t = apt(tpt->x, trow->y);
            APt s = apt(spt->x, srow->y);
            // canonical b = distance from the edge to the S point
            Aff b = left_side ? spt->x : Aff(m) - spt->x;
            Aff gap = up.y - lo.y;

            bool is_static = gap.is_const() && b.is_const();
            bool b_le_half = Poly2::from(b).le01(half);
            bool a_small = Poly2::from(gap).lt01(small_a_lim) && Poly2::from(gap).gt01(Exact(0));
            bool a_large = is_static && gap.at0() > small_a_lim && gap.at0() < Exact(1);
            // Static quads in the large-a range keep the f(a)-based lemma;
            // deforming ones fall back to the small-a form or, when b stays
            // at most 1/2, to the two-triangle split that works across the
            // a = 2*sqrt(2)-2 boundary.
            bool use_split = b_le_half && !a_small && !a_large;
            std::string qp = sp + (left_side ? "lquad" : "rquad");
            if (use_split) {
                // split into two triangles along E0-S; all disjuncts stay
                // boundary escapes or configuration points
                AApp t1;
                t1.id = qp + "_a";
                t1.kind = LemmaKind::Triangle;
                t1.region = {e0, e1, s};
                t1.anchors = {{"", e0, true}, {"", e1, true}, {spt->id, s, false}};
                AApp t2;
                t2.id = qp + "_b";
                t2.kind = LemmaKind::Triangle;
                t2.region = {e0, s, t};
                t2.anchors = {{"", e0, true}, {spt->id, s, false}, {tpt->id, t, false}};
                apps.push_back(std::move(t1));
                apps.push_back(std::move(t2));
            } else if (a_small || a_large) {
                AApp q;
                q.id = qp;
                q.kind = a_small ? LemmaKind::QuadEdgeSmallA : LemmaKind::QuadEdge;
                q.region = {e0, e1, s, t};
                q.anchors = {{tpt->id, t, false}, {spt->id, s, false}};
                q.escapes = {{e0, e1}};
                apps.push_back(std::move(q));
            } else {
                throw CertError("no applicable lemma form for the column quad in strip " + sp);
            }
        };
        make_quad(true);
        make_quad(false);
    }
    return apps;
}

// Static certificate from a row-tagged configuration.
inline Certificate build_lattice_certificate(const Configuration& config,
                                             const std::string& color) {
    Certificate cert;
    cert.config = config;
    cert.color = color;
    auto rows = rows_from_config(config, color);
    auto apps = build_lattice_apps(config.side, rows);
    for (auto& a : apps) cert.apps.push_back(instantiate(a, 0));
    return cert;
}

} // namespace unav

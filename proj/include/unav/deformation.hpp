#pragma once

// Continuous-deformation machinery: movement schedules describe piecewise-
// linear trajectories of a color's points over a parameter t in [0,1] per
// phase, together with a deforming lattice decomposition.  verify_schedule
// certifies that the decomposition stays a valid unavoidability certificate
// for every t:
//
//   * lemma hypotheses become polynomials of degree <= 2 in t and are
//     certified exactly on [0,1] (endpoint + interior extremum analysis);
//   * coverage is certified exactly at both phase endpoints, and extends to
//     all t because regions deform affinely: edges that coincide at t=0 and
//     t=1 coincide for every t, convexity holds as a certified polynomial
//     sign condition, and boundary edges stay on their container edge line;
//   * points declared restricted (possibly uncovered or sharing a box) must
//     have constant trajectories.
//
// On success the schedule yields one obligation per point: its swept
// polyline lies entirely inside a single packed box (or entirely outside
// all boxes, for points without a coverage justification).

#include <functional>

#include "lattice.hpp"

namespace unav {

struct SchedulePhase {
    std::map<std::string, APt> traj;  // position of every color point over t
    std::vector<AApp> apps;
};

struct MovementSchedule {
    std::string id;
    std::string color;
    Exact container;
    std::map<std::string, EPt> base;  // color configuration at schedule start
    std::vector<SchedulePhase> phases;
    std::set<std::string> restricted;   // must stay constant
    std::vector<Exact> target_heights;  // compression targets, for reports
};

struct Obligation {
    std::string point_id;
    std::string color;
    std::vector<EPt> waypoints;  // consecutive distinct positions
    bool moved = false;
};

namespace detail {

inline std::string ept_key(const EPt& p) { return p.x.str() + "|" + p.y.str(); }

inline bool aff_in_range(const Aff& a, const Exact& m) {
    return Poly2::from(a).ge01(Exact(0)) && Poly2::from(a).le01(m);
}

// A boundary anchor / escape endpoint must stay on one container edge line.
inline bool apt_on_boundary(const APt& p, const Exact& m) {
    bool on_line = (p.x.is_const() && (p.x.at0().is_zero() || p.x.at0() == m)) ||
                   (p.y.is_const() && (p.y.at0().is_zero() || p.y.at0() == m));
    return on_line && aff_in_range(p.x, m) && aff_in_range(p.y, m);
}

inline bool aff_is_zero(const Aff& a) { return a.c0.is_zero() && a.c1.is_zero(); }

// Split an axis-aligned affine vector into (positive length, needs e.x or
// e.y identically zero).  Returns false if not axis-aligned.
inline bool axis_aff_length(const APt& e, Aff& out) {
    if (aff_is_zero({e.x.c0, e.x.c1})) {
        out = Poly2::from(e.y).ge01(Exact(0)) ? e.y : -e.y;
        return true;
    }
    if (aff_is_zero({e.y.c0, e.y.c1})) {
        out = Poly2::from(e.x).ge01(Exact(0)) ? e.x : -e.x;
        return true;
    }
    return false;
}

// Parameterized hypothesis checks, mirroring check_lemma over Poly2.
// Returns true only when every hypothesis is certified for all t in [0,1].
inline bool check_app_hypotheses(const AApp& app, const Exact& m,
                                 const std::map<std::string, APt>& traj, Report& rep,
                                 const std::string& sched_id) {
    Exact one(1);
    auto fail = [&](const std::string& why) {
        rep.fact(sched_id + "." + app.id, why, false);
        return false;
    };

    for (auto& an : app.anchors) {
        if (an.boundary) {
            if (!apt_on_boundary(an.pos, m)) return fail("boundary anchor leaves the boundary");
        } else {
            auto it = traj.find(an.point_id);
            if (it == traj.end()) return fail("anchor is not a configuration point");
            if (!(it->second == an.pos)) return fail("anchor does not follow its trajectory");
        }
    }
    for (auto& [p, q] : app.escapes) {
        if (!apt_on_boundary(p, m) || !apt_on_boundary(q, m))
            return fail("escape edge leaves the container boundary");
        bool same_line = (p.x == q.x && p.x.is_const()) || (p.y == q.y && p.y.is_const());
        if (!same_line) return fail("escape edge must stay on one container edge line");
    }

    switch (app.kind) {
        case LemmaKind::Triangle: {
            if (app.region.size() != 3 || app.anchors.size() != 3)
                return fail("triangle needs 3 vertices and 3 anchors");
            for (int i = 0; i < 3; ++i) {
                if (!(app.anchors[i].pos == app.region[i]))
                    return fail("triangle anchors must be its vertices");
                Poly2 d2 = dist2(app.region[i], app.region[(i + 1) % 3]);
                if (!d2.le01(one)) return fail("triangle side exceeds 1 for some t");
            }
            break;
        }
        case LemmaKind::RectEdge: {
            if (app.region.size() != 4 || app.anchors.size() != 2)
                return fail("rect needs 4 vertices and 2 anchors");
            const APt &e0 = app.region[0], &e1 = app.region[1], &s = app.region[2],
                      &t = app.region[3];
            APt e = e1 - e0, h = t - e0;
            Aff a, b;
            if (!axis_aff_length(e, a) || !axis_aff_length(h, b))
                return fail("rect sides must stay axis-aligned");
            // perpendicular: one along x, the other along y
            bool e_vert = aff_is_zero(e.x);
            bool h_vert = aff_is_zero(h.x);
            if (e_vert == h_vert) return fail("rect sides must be perpendicular");
            if (!(s == APt{e1.x + h.x, e1.y + h.y})) return fail("rect S must equal E1 + h");
            if (!Poly2::from(a).gt01(Exact(0)) || !Poly2::from(b).gt01(Exact(0)))
                return fail("rect degenerates for some t");
            if (!Poly2::from(a).le01(one)) return fail("rect width exceeds 1 for some t");
            if (!Poly2::from(b).le01(one)) return fail("rect height exceeds 1 for some t");
            Aff a2b = a + Exact(2) * b;
            if (!Poly2::from(a2b).le01(Exact(2) * sqrt2()))
                return fail("rect a+2b exceeds 2*sqrt(2) for some t");
            if (!(app.anchors[0].pos == t) || !(app.anchors[1].pos == s))
                return fail("rect anchors must be T and S");
            if (app.escapes.size() != 1) return fail("rect needs exactly its escape edge");
            if (!((app.escapes[0].first == e0 && app.escapes[0].second == e1) ||
                  (app.escapes[0].first == e1 && app.escapes[0].second == e0)))
                return fail("rect escape must be the E0-E1 side");
            break;
        }
        case LemmaKind::QuadEdgeSmallA: {
            if (app.region.size() != 4 || app.anchors.size() != 2)
                return fail("quad needs 4 vertices and 2 anchors");
            const APt &e0 = app.region[0], &e1 = app.region[1], &s = app.region[2],
                      &t = app.region[3];
            APt u = t - e0;
            if (!(u.x.is_const() && u.y.is_const()))
                return fail("quad unit side must be constant");
            Exact ux = u.x.at0(), uy = u.y.at0();
            if (!(ux * ux + uy * uy == one)) return fail("quad unit side must have length 1");
            APt e = e1 - e0;
            Aff eu = Aff{ux * e.x.c0 + uy * e.y.c0, ux * e.x.c1 + uy * e.y.c1};
            if (!aff_is_zero(eu)) return fail("quad escape edge must stay perpendicular to u");
            Aff a;
            if (!axis_aff_length(e, a)) return fail("quad escape edge must stay axis-aligned");
            // b = (S - E1) . u, and S must equal E1 + b*u identically
            APt sv = s - e1;
            Aff b = Aff{ux * sv.x.c0 + uy * sv.y.c0, ux * sv.x.c1 + uy * sv.y.c1};
            APt expected{e1.x + Aff{ux * b.c0, ux * b.c1}, e1.y + Aff{uy * b.c0, uy * b.c1}};
            if (!(expected == s)) return fail("quad S must equal E1 + b*u");
            Exact lim = Exact(2) * sqrt2() - Exact(2);
            if (!Poly2::from(a).gt01(Exact(0))) return fail("quad a must stay positive");
            if (!Poly2::from(a).lt01(lim)) return fail("quad a must stay below 2*sqrt(2)-2");
            if (!Poly2::from(b).gt01(Exact(0))) return fail("quad b must stay positive");
            if (!Poly2::from(b).le01(one)) return fail("quad b must stay at most 1");
            if (!dist2(s, t).le01(one)) return fail("quad anchor distance exceeds 1 for some t");
            if (!(app.anchors[0].pos == t) || !(app.anchors[1].pos == s))
                return fail("quad anchors must be T and S");
            if (app.escapes.size() != 1) return fail("quad needs exactly its escape edge");
            if (!((app.escapes[0].first == e0 && app.escapes[0].second == e1) ||
                  (app.escapes[0].first == e1 && app.escapes[0].second == e0)))
                return fail("quad escape must be the E0-E1 side");
            break;
        }
        case LemmaKind::QuadEdge: {
            // b < f(a) cannot be certified along a deformation, so this kind
            // is only admitted when the region moves rigidly (all difference
            // vectors constant); the hypotheses are isometry-invariant, so
            // the static check at t = 0 covers every t.
            for (size_t i = 1; i < app.region.size(); ++i) {
                APt d = app.region[i] - app.region[0];
                if (!d.x.is_const() || !d.y.is_const())
                    return fail("quad_edge applications may only translate in a schedule");
            }
            LemmaApp st = instantiate(app, 0);
            std::map<std::string, EPt> pts;
            for (auto& [id, p] : traj) pts.emplace(id, p.at0());
            AnchorContext ctx;
            ctx.points = &pts;
            ctx.container = m;
            Report sub;
            if (check_lemma(st, ctx, sub) != Verdict::True)
                return fail("static quad_edge application fails inside the schedule");
            rep.merge(sub);
            break;
        }
        default:
            return fail("unsupported lemma kind in schedule");
    }
    return true;
}

// Orientation-normalized region polygon (CCW at t = 0).
inline std::vector<APt> normalized_region(const AApp& app) {
    std::vector<APt> poly = app.region;
    Exact area;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        EPt a = poly[i].at0(), b = poly[(i + 1) % n].at0();
        area = area + ecross(a, b);
    }
    if (area.sign() < 0) std::reverse(poly.begin(), poly.end());
    return poly;
}

// Convexity and positive orientation for all t.
inline bool convex_ccw_all_t(const std::vector<APt>& poly) {
    size_t n = poly.size();
    if (n < 3) return false;
    Poly2 area = Poly2::constant(Exact(0));
    for (size_t i = 0; i < n; ++i) {
        const APt& a = poly[i];
        const APt& b = poly[(i + 1) % n];
        const APt& c = poly[(i + 2) % n];
        Poly2 cr = across(b - a, c - b);
        if (!cr.ge01(Exact(0))) return false;
        area = area + across(a, b);
    }
    return area.gt01(Exact(0));
}

// Tiling edge-matching: each directed edge either has an exactly reversed
// partner (checked at both endpoints; equality at t=0 and t=1 of affine
// positions implies equality for all t) or lies on the container boundary.
inline bool edges_pair_or_boundary(const std::vector<std::vector<APt>>& polys, const Exact& m,
                                   Report& rep, const std::string& sched_id) {
    struct Edge {
        const APt* p;
        const APt* q;
    };
    std::vector<Edge> edges;
    for (auto& poly : polys) {
        size_t n = poly.size();
        for (size_t i = 0; i < n; ++i) edges.push_back({&poly[i], &poly[(i + 1) % n]});
    }
    std::map<std::string, std::vector<size_t>> index0;
    auto key0 = [](const APt& a, const APt& b) {
        return ept_key(a.at0()) + "->" + ept_key(b.at0());
    };
    for (size_t i = 0; i < edges.size(); ++i)
        index0[key0(*edges[i].p, *edges[i].q)].push_back(i);

    for (size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        // boundary edge?
        bool pb = apt_on_boundary(*e.p, m), qb = apt_on_boundary(*e.q, m);
        bool same_line = false;
        if (pb && qb) {
            auto on = [&](auto get, const Exact& val) {
                const Aff& a = get(*e.p);
                const Aff& b = get(*e.q);
                return a.is_const() && b.is_const() && a.at0() == val && b.at0() == val;
            };
            same_line = on([](const APt& r) -> const Aff& { return r.x; }, Exact(0)) ||
                        on([](const APt& r) -> const Aff& { return r.x; }, m) ||
                        on([](const APt& r) -> const Aff& { return r.y; }, Exact(0)) ||
                        on([](const APt& r) -> const Aff& { return r.y; }, m);
        }
        if (same_line) continue;
        // reversed partner, valid at both endpoints
        auto it = index0.find(key0(*e.q, *e.p));
        bool found = false;
        if (it != index0.end()) {
            for (size_t j : it->second) {
                if (j == i) continue;
                if (edges[j].p->at1() == e.q->at1() && edges[j].q->at1() == e.p->at1()) {
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            rep.fact(sched_id + ".tiling",
                     "a region edge is neither shared nor on the container boundary", false);
            return false;
        }
    }
    return true;
}

} // namespace detail

struct ScheduleResult {
    Verdict verdict = Verdict::Indeterminate;
    std::vector<Obligation> obligations;
};

inline bool point_on_polyline(const EPt& p, const std::vector<EPt>& poly);

using CoverageFn = std::function<Verdict(const std::vector<EPolygon>&, const Exact&)>;

inline Verdict default_coverage(const std::vector<EPolygon>& regions, const Exact& m) {
    return polygons_cover_square(regions, m).verdict;
}

// Certify a movement schedule against its base configuration.
inline ScheduleResult verify_schedule(const MovementSchedule& ms, Report& rep,
                                      const CoverageFn& coverage = default_coverage) {
    ScheduleResult res;
    const Exact& m = ms.container;
    bool ok = true;
    auto fail = [&](const std::string& why) {
        rep.fact(ms.id, why, false);
        ok = false;
    };

    if (ms.phases.empty()) {
        fail("schedule has no phases");
        res.verdict = Verdict::False;
        return res;
    }

    // trajectories: defined for every point, starting at the base positions
    for (auto& [id, pos] : ms.base) {
        auto it = ms.phases[0].traj.find(id);
        if (it == ms.phases[0].traj.end()) {
            fail("point '" + id + "' has no trajectory");
            continue;
        }
        if (!(it->second.at0() == pos)) fail("trajectory of '" + id + "' does not start at base");
    }
    for (auto& ph : ms.phases)
        for (auto& [id, p] : ph.traj)
            if (!ms.base.count(id)) fail("trajectory for unknown point '" + id + "'");

    // continuity across phases
    for (size_t k = 0; k + 1 < ms.phases.size(); ++k) {
        for (auto& [id, p] : ms.phases[k].traj) {
            auto it = ms.phases[k + 1].traj.find(id);
            if (it == ms.phases[k + 1].traj.end()) {
                fail("point '" + id + "' missing from phase " + std::to_string(k + 1));
                continue;
            }
            if (!(p.at1() == it->second.at0()))
                fail("trajectory of '" + id + "' is discontinuous between phases");
        }
    }

    // restricted points never move
    for (auto& id : ms.restricted) {
        for (auto& ph : ms.phases) {
            auto it = ph.traj.find(id);
            if (it == ph.traj.end()) continue;
            if (!it->second.x.is_const() || !it->second.y.is_const())
                fail("restricted point '" + id + "' must remain stationary");
        }
    }

    // per-phase certification
    for (size_t k = 0; k < ms.phases.size() && ok; ++k) {
        const SchedulePhase& ph = ms.phases[k];
        std::string pid = ms.id + ".phase" + std::to_string(k);
        std::vector<std::vector<APt>> polys;
        for (auto& app : ph.apps) {
            if (!detail::check_app_hypotheses(app, m, ph.traj, rep, pid)) {
                ok = false;
                break;
            }
            auto poly = detail::normalized_region(app);
            if (!detail::convex_ccw_all_t(poly)) {
                fail("region of '" + app.id + "' is not convex for all t");
                break;
            }
            polys.push_back(std::move(poly));
        }
        if (!ok) break;

        for (int endpoint = 0; endpoint < 2 && ok; ++endpoint) {
            std::vector<EPolygon> regions;
            for (auto& app : ph.apps) regions.push_back(app_polygon(instantiate(app, endpoint)));
            if (coverage(regions, m) != Verdict::True) {
                fail("coverage fails at phase " + std::to_string(k) + " endpoint " +
                     std::to_string(endpoint));
            }
        }
        if (!ok) break;
        if (!detail::edges_pair_or_boundary(polys, m, rep, pid)) ok = false;
    }

    if (!ok) {
        res.verdict = Verdict::False;
        return res;
    }
    rep.step(ms.id, "movement schedule preserves unavoidability for all t", Verdict::True);

    // obligations: the swept polyline of every point, canonicalized by
    // dropping interior waypoints that lie on the segment between their
    // neighbours (so phase splits do not change the obligation)
    for (auto& [id, base_pos] : ms.base) {
        Obligation ob;
        ob.point_id = id;
        ob.color = ms.color;
        ob.waypoints.push_back(base_pos);
        for (auto& ph : ms.phases) {
            auto it = ph.traj.find(id);
            if (it == ph.traj.end()) continue;
            EPt nxt = it->second.at1();
            if (nxt == ob.waypoints.back()) continue;
            while (ob.waypoints.size() >= 2) {
                const EPt& prev = ob.waypoints[ob.waypoints.size() - 2];
                const EPt& mid = ob.waypoints.back();
                if (!point_on_polyline(mid, {prev, nxt})) break;
                ob.waypoints.pop_back();
            }
            ob.waypoints.push_back(nxt);
        }
        ob.moved = ob.waypoints.size() > 1;
        res.obligations.push_back(std::move(ob));
    }
    res.verdict = Verdict::True;
    return res;
}

// --------------------------------------------------- schedule construction

struct RowScheduleSpec {
    int target_row = 1;          // 1-based, bottom to top
    bool compress = false;       // move to the F_i configuration first
    mpq_class shift{0};          // horizontal row shift distance (left then back)
    bool slide = false;          // slide the leftmost point out and back
    Exact slide_to = Exact(1);   // slide destination x
    std::set<std::string> restricted;
};

namespace detail {

// Exact F_i heights: rows below the target pushed up against the bottom
// edge-distance bound, rows above pushed down against the top one, the
// target row centred between its neighbours.
inline std::vector<Exact> compression_targets(const Exact& m, size_t nrows, size_t target) {
    Exact edge = sqrt2() - frac(1, 2);
    Exact gap = Exact::sqrt_rational(3) * frac(1, 2);
    std::vector<Exact> y(nrows);
    for (size_t j = 0; j < target; ++j) y[j] = edge + Exact((long)j) * gap;
    for (size_t j = target + 1; j < nrows; ++j)
        y[j] = (m - edge) - Exact((long)(nrows - 1 - j)) * gap;
    if (target == 0) y[0] = edge;
    else if (target == nrows - 1) y[target] = m - edge;
    else y[target] = (y[target - 1] + y[target + 1]) * frac(1, 2);
    return y;
}

} // namespace detail

// Build the F_i movement schedule for one row of a row-tagged configuration,
// optionally followed by the horizontal shift and the leftmost-point slide.
// The decomposition of every phase is regenerated from the deforming rows.
inline MovementSchedule make_row_schedule(const Configuration& config, const std::string& color,
                                          const RowScheduleSpec& spec, const std::string& id) {
    MovementSchedule ms;
    ms.id = id;
    ms.color = color;
    ms.container = config.side;
    for (auto& p : config.points)
        if (p.color == color) ms.base.emplace(p.id, p.pos);
    ms.restricted = spec.restricted;

    std::vector<ARow> rows = rows_from_config(config, color);
    size_t nrows = rows.size();
    if (nrows < 2) throw CertError("row schedule needs at least two rows");
    if (spec.target_row < 1 || (size_t)spec.target_row > nrows)
        throw CertError("target row out of range");
    size_t ti = (size_t)spec.target_row - 1;

    auto traj_of = [&](const std::vector<ARow>& rs) {
        std::map<std::string, APt> traj;
        for (auto& r : rs)
            for (auto& p : r.pts) traj.emplace(p.id, APt{p.x, r.y});
        return traj;
    };
    auto add_phase = [&](const std::vector<ARow>& rs) {
        SchedulePhase ph;
        ph.traj = traj_of(rs);
        ph.apps = build_lattice_apps(ms.container, rs);
        ms.phases.push_back(std::move(ph));
    };
    auto advance = [&](std::vector<ARow>& rs) {
        for (auto& r : rs) {
            r.y = Aff(r.y.at1());
            for (auto& p : r.pts) p.x = Aff(p.x.at1());
        }
    };

    std::vector<ARow> cur = rows;
    if (spec.compress) {
        auto targets = detail::compression_targets(ms.container, nrows, ti);
        ms.target_heights = targets;
        std::vector<ARow> moving = cur;
        for (size_t j = 0; j < nrows; ++j) moving[j].y = Aff::between(cur[j].y.at0(), targets[j]);
        add_phase(moving);
        advance(moving);
        cur = moving;
    }
    if (spec.shift != 0) {
        Exact delta{mpq_class(spec.shift)};
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<ARow> moving = cur;
            for (auto& p : moving[ti].pts) {
                Exact from = p.x.at0();
                p.x = Aff::between(from, dir == 0 ? from - delta : from + delta);
            }
            add_phase(moving);
            advance(moving);
            cur = moving;
        }
    }
    if (spec.slide) {
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<ARow> moving = cur;
            auto& lp = moving[ti].pts.front();
            Exact from = lp.x.at0();
            lp.x = Aff::between(from, dir == 0 ? spec.slide_to : rows[ti].pts.front().x.at0());
            add_phase(moving);
            advance(moving);
            cur = moving;
        }
    }
    if (ms.phases.empty()) {
        // a trivial constant schedule still emits point obligations
        add_phase(cur);
    }
    return ms;
}

// The spec-facing construction of the F_i compression schedule.
inline MovementSchedule row_compression_targets(const Configuration& config,
                                                const std::string& color, int row,
                                                const std::string& id) {
    RowScheduleSpec spec;
    spec.target_row = row;
    spec.compress = true;
    return make_row_schedule(config, color, spec, id);
}

// --------------------------------------------------- schedule file format
//
// Extension of the certificate schema: per-phase trajectories as affine
// coordinate pairs ["start", "end"], plus the deforming applications in the
// same role-ordered layout as static certificates.

namespace detail {

inline nlohmann::json aff_json(const Aff& a) {
    return nlohmann::json::array({a.at0().str(), a.at1().str()});
}
inline Aff parse_aff(const nlohmann::json& j) {
    return Aff::between(parse_constant(j.at(0).get<std::string>()),
                        parse_constant(j.at(1).get<std::string>()));
}
inline nlohmann::json apt_json(const APt& p) {
    return nlohmann::json::array({aff_json(p.x), aff_json(p.y)});
}
inline APt parse_apt(const nlohmann::json& j) {
    return {parse_aff(j.at(0)), parse_aff(j.at(1))};
}

} // namespace detail

inline nlohmann::json schedule_to_json(const MovementSchedule& ms) {
    nlohmann::json j;
    j["id"] = ms.id;
    j["color"] = ms.color;
    j["container"] = ms.container.str();
    j["base"] = nlohmann::json::object();
    for (auto& [id, p] : ms.base) j["base"][id] = {p.x.str(), p.y.str()};
    j["restricted"] = nlohmann::json::array();
    for (auto& id : ms.restricted) j["restricted"].push_back(id);
    j["phases"] = nlohmann::json::array();
    for (auto& ph : ms.phases) {
        nlohmann::json pj;
        pj["trajectories"] = nlohmann::json::object();
        for (auto& [id, p] : ph.traj) pj["trajectories"][id] = detail::apt_json(p);
        pj["applications"] = nlohmann::json::array();
        for (auto& app : ph.apps) {
            nlohmann::json aj;
            aj["id"] = app.id;
            aj["kind"] = kind_name(app.kind);
            aj["region"] = nlohmann::json::array();
            for (auto& v : app.region) aj["region"].push_back(detail::apt_json(v));
            aj["anchors"] = nlohmann::json::array();
            for (auto& an : app.anchors) {
                nlohmann::json anj;
                if (an.boundary) anj["boundary"] = detail::apt_json(an.pos);
                else anj["point"] = an.point_id;
                aj["anchors"].push_back(std::move(anj));
            }
            aj["escapes"] = nlohmann::json::array();
            for (auto& [p, q] : app.escapes)
                aj["escapes"].push_back(
                    nlohmann::json::array({detail::apt_json(p), detail::apt_json(q)}));
            pj["applications"].push_back(std::move(aj));
        }
        j["phases"].push_back(std::move(pj));
    }
    return j;
}

inline MovementSchedule parse_schedule_json(const nlohmann::json& j) {
    MovementSchedule ms;
    ms.id = j.at("id").get<std::string>();
    ms.color = j.at("color").get<std::string>();
    ms.container = parse_constant(j.at("container").get<std::string>());
    for (auto& [id, pj] : j.at("base").items())
        ms.base.emplace(id, EPt{parse_constant(pj.at(0).get<std::string>()),
                                parse_constant(pj.at(1).get<std::string>())});
    for (auto& id : j.value("restricted", nlohmann::json::array()))
        ms.restricted.insert(id.get<std::string>());
    for (auto& pj : j.at("phases")) {
        SchedulePhase ph;
        for (auto& [id, tj] : pj.at("trajectories").items())
            ph.traj.emplace(id, detail::parse_apt(tj));
        for (auto& aj : pj.at("applications")) {
            AApp app;
            app.id = aj.at("id").get<std::string>();
            std::string kind = aj.at("kind").get<std::string>();
            if (kind == "triangle") app.kind = LemmaKind::Triangle;
            else if (kind == "rect_edge") app.kind = LemmaKind::RectEdge;
            else if (kind == "quad_edge") app.kind = LemmaKind::QuadEdge;
            else if (kind == "quad_edge_small_a") app.kind = LemmaKind::QuadEdgeSmallA;
            else throw CertError("unknown schedule application kind: " + kind);
            for (auto& vj : aj.at("region")) app.region.push_back(detail::parse_apt(vj));
            for (auto& anj : aj.at("anchors")) {
                AAnchor an;
                if (anj.contains("boundary")) {
                    an.boundary = true;
                    an.pos = detail::parse_apt(anj.at("boundary"));
                } else {
                    an.point_id = anj.at("point").get<std::string>();
                }
                app.anchors.push_back(std::move(an));
            }
            for (auto& ej : aj.value("escapes", nlohmann::json::array()))
                app.escapes.emplace_back(detail::parse_apt(ej.at(0)), detail::parse_apt(ej.at(1)));
            ph.apps.push_back(std::move(app));
        }
        ms.phases.push_back(std::move(ph));
    }
    // point anchors take their positions from the phase trajectories
    for (auto& ph : ms.phases)
        for (auto& app : ph.apps)
            for (auto& an : app.anchors)
                if (!an.boundary) {
                    auto it = ph.traj.find(an.point_id);
                    if (it != ph.traj.end()) an.pos = it->second;
                }
    return ms;
}

// ------------------------------------------------------ obligation merging

// A merged class: obligations certified to lie in one common box, with the
// shared points witnessing each merge.
struct ObligationClass {
    std::string id;
    std::vector<Obligation> members;
    std::vector<EPt> shared;  // shared[k] lies on members[k] and members[k+1]
};

inline bool point_on_polyline(const EPt& p, const std::vector<EPt>& poly) {
    if (poly.size() == 1) return p == poly[0];
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        const EPt& a = poly[i];
        const EPt& b = poly[i + 1];
        EPt d = b - a, v = p - a;
        if (d.x.is_zero() && d.y.is_zero()) {
            if (p == a) return true;
            continue;
        }
        if (!(ecross(d, v) == Exact(0))) continue;
        Exact t_num = edot(v, d), t_den = edot(d, d);
        if (t_num.sign() >= 0 && t_num <= t_den) return true;
    }
    return false;
}

// Certify that a class's combined sweep covers the horizontal segment
// [x0, x1] x {y}: collect the collinear pieces and check their union.
inline bool class_covers_segment(const ObligationClass& cls, const Exact& x0, const Exact& x1,
                                 const Exact& y) {
    std::vector<std::pair<Exact, Exact>> pieces;
    for (auto& ob : cls.members) {
        for (size_t i = 0; i + 1 < ob.waypoints.size(); ++i) {
            const EPt& a = ob.waypoints[i];
            const EPt& b = ob.waypoints[i + 1];
            if (!(a.y == y && b.y == y)) continue;
            Exact lo = a.x < b.x ? a.x : b.x;
            Exact hi = a.x < b.x ? b.x : a.x;
            pieces.emplace_back(lo, hi);
        }
        if (ob.waypoints.size() == 1 && ob.waypoints[0].y == y)
            pieces.emplace_back(ob.waypoints[0].x, ob.waypoints[0].x);
    }
    std::sort(pieces.begin(), pieces.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    Exact cover = x0;
    for (auto& [lo, hi] : pieces) {
        if (lo > cover) break;
        if (hi > cover) cover = hi;
    }
    return cover >= x1;
}

// Verify the merge structure: each consecutive member pair shares the
// declared point, so all members lie in the same box.
inline bool verify_class_merge(const ObligationClass& cls, Report& rep) {
    if (cls.members.empty()) return false;
    if (cls.members.size() != cls.shared.size() + 1) {
        rep.fact(cls.id, "merge chain needs one shared point per adjacent member pair", false);
        return false;
    }
    for (size_t k = 0; k + 1 < cls.members.size(); ++k) {
        if (!point_on_polyline(cls.shared[k], cls.members[k].waypoints) ||
            !point_on_polyline(cls.shared[k], cls.members[k + 1].waypoints)) {
            rep.fact(cls.id, "shared point does not lie on both member sweeps", false);
            return false;
        }
    }
    return true;
}

} // namespace unav

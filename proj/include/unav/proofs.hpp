#pragma once

// Data-driven replay of the packing lower-bound proofs.
//
// A proof script names its certificates, the movement schedules applied to
// them, the obligation classes with their merge witnesses, and the final
// line-resource argument (with its per-case midpoint-region analyses when
// one box is allowed to fall short).  Every step is certified; a proof
// passes only if every case branch reaches a certified contradiction with a
// hypothetical packing of `packing_size` boxes, which establishes
// s(packing_size) >= container side.

#include <memory>

#include "packing.hpp"
#include "resource.hpp"

namespace unav {

struct Mutations {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string get(const std::string& k) const { return kv.at(k); }
};

struct ProofResult {
    Verdict verdict = Verdict::Indeterminate;
    Report report;
    std::string conclusion;
};

// ------------------------------------------------------------ bounds table

struct KnownBound {
    int n;
    std::string lower_expr;
    std::string upper_expr;
    std::string note;
};

inline std::vector<KnownBound> bounds_table(bool proofs_done) {
    std::vector<KnownBound> t = {
        {5, "2+sqrt(2)/2", "2+sqrt(2)/2", "exact"},
        {6, "3", "3", "exact"},
        {10, "3+sqrt(2)/2", "3+sqrt(2)/2", "exact"},
        {13, "4", "4", "exact"},
        {46, "7", "7", "exact"},
        {22, proofs_done ? "5" : "sqrt(15)+1", "5", proofs_done ? "exact" : "open here"},
        {33, proofs_done ? "6" : "sqrt(24)+1", "6", proofs_done ? "exact" : "open here"},
    };
    // s(m^2-1) = s(m^2-2) = m
    for (int m = 2; m <= 7; ++m) {
        t.push_back({m * m - 1, std::to_string(m), std::to_string(m), "exact"});
        t.push_back({m * m - 2, std::to_string(m), std::to_string(m), "exact"});
    }
    std::sort(t.begin(), t.end(), [](auto& a, auto& b) { return a.n < b.n; });
    return t;
}

inline std::string render_bounds_table(bool proofs_done) {
    std::string out = "  n   lower               upper\n";
    for (auto& b : bounds_table(proofs_done)) {
        Exact lo = parse_constant(b.lower_expr);
        Exact hi = parse_constant(b.upper_expr);
        if (!(lo <= hi)) throw CertError("bounds table violates lower <= upper");
        char line[128];
        std::snprintf(line, sizeof line, "%4d  %-18s  %-18s %s\n", b.n, b.lower_expr.c_str(),
                      b.upper_expr.c_str(), b.note.c_str());
        out += line;
    }
    return out;
}

// -------------------------------------------------------------- the runner

namespace proofs_detail {

inline EPt parse_pt(const nlohmann::json& j) {
    return {parse_constant(j.at(0).get<std::string>()), parse_constant(j.at(1).get<std::string>())};
}

struct LoadedCert {
    Certificate cert;
    VerifyResult vr;
};

// Movement declaration from the script.
struct MovementDecl {
    std::string id;
    std::string color;
    int row = 1;
    bool compress = false;
    mpq_class shift{0};
    bool slide = false;
};

} // namespace proofs_detail

class ProofRunner {
public:
    explicit ProofRunner(std::string base_dir = ".") : base_dir_(std::move(base_dir)) {}

    ProofResult run(const nlohmann::json& script, const Mutations& mut = {}) {
        ProofResult res;
        Report& rep = res.report;
        try {
            run_inner(script, mut, res);
        } catch (const std::exception& e) {
            rep.step("proof.error", std::string("aborted: ") + e.what(), Verdict::False);
            res.verdict = Verdict::False;
        }
        return res;
    }

    ProofResult run_file(const std::string& path, const Mutations& mut = {}) {
        std::ifstream in(path);
        if (!in) throw CertError("cannot open proof script: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw ParseError(std::string("proof script JSON parse error: ") + e.what());
        }
        return run(j, mut);
    }

private:
    std::string base_dir_;
    std::map<std::string, CoverageResult> coverage_cache_;

    void run_inner(const nlohmann::json& script, const Mutations& mut, ProofResult& res) {
        Report& rep = res.report;
        std::string name = script.at("name").get<std::string>();
        int packing_size = script.at("packing_size").get<int>();
        Exact m = parse_constant(script.at("container").get<std::string>());
        Verdict all = Verdict::True;

        rep.note("proof '" + name + "': no packing of " + std::to_string(packing_size) +
                 " boxes fits in a square of side " + m.str());

        // ---- certificates
        std::map<std::string, proofs_detail::LoadedCert> certs;  // by color
        for (auto& cj : script.at("certificates")) {
            std::string file = cj.at("file").get<std::string>();
            std::string color = cj.at("color").get<std::string>();
            CertFile cf = load_cert_file(base_dir_ + "/" + file);
            Certificate cert = cf.by_color(color);
            if (mut.has("row-dy")) {
                Exact dy = parse_constant(mut.get("row-dy"));
                for (auto& p : cert.config.points) p.pos.y = p.pos.y + dy;
                cert = build_lattice_certificate(cert.config, color);
            }
            proofs_detail::LoadedCert lc;
            lc.vr = verify_certificate(cert);
            lc.cert = std::move(cert);
            rep.step("verify." + color, "certificate '" + file + "' (" + color + ")",
                     lc.vr.verdict);
            rep.merge(lc.vr.report);
            all = all && lc.vr.verdict;
            certs.emplace(color, std::move(lc));
        }
        if (all != Verdict::True) {
            res.verdict = all;
            return;
        }

        // ---- counting derivations
        std::set<std::string> exact_cover_colors;
        for (auto& cj : script.value("exact_cover", nlohmann::json::array())) {
            std::string color = cj.get<std::string>();
            int n = certs.at(color).cert.config.count_color(color);
            bool ok = n == packing_size;
            rep.fact("exact_cover." + color,
                     "unavoidable set of " + std::to_string(n) + " " + color +
                         " points against " + std::to_string(packing_size) +
                         " boxes: every box holds exactly one, every point is covered solo",
                     ok);
            if (!ok) all = Verdict::False;
            else exact_cover_colors.insert(color);
        }
        if (script.contains("blue_excess")) {
            std::string color = script.at("blue_excess").get<std::string>();
            int n = certs.at(color).cert.config.count_color(color);
            bool ok = n == packing_size + 1;
            rep.fact("excess." + color,
                     std::to_string(n) + " " + color + " points against " +
                         std::to_string(packing_size) +
                         " boxes: either one point is uncovered or one box holds two",
                     ok);
            if (!ok) all = Verdict::False;
        }

        // ---- exception localization (the x < threshold solo assumption)
        Exact solo_threshold;
        bool have_localization = false;
        if (script.contains("exception_localization")) {
            const auto& lj = script.at("exception_localization");
            std::string color = lj.at("color").get<std::string>();
            solo_threshold = parse_constant(lj.at("x_threshold").get<std::string>());
            have_localization = true;
            Verdict v = check_localization(certs.at(color).cert.config, color, m,
                                           solo_threshold, rep);
            all = all && v;
            rep.note("assumption (symmetry x -> " + m.str() + "-x, trusted reduction): all " +
                     color + " points with x < " + solo_threshold.str() +
                     " lie in a box containing no other " + color + " point");
        }
        if (all != Verdict::True) {
            res.verdict = all;
            return;
        }

        // ---- movement declarations
        std::vector<proofs_detail::MovementDecl> movements;
        for (auto& mj : script.at("movements")) {
            proofs_detail::MovementDecl d;
            d.id = mj.at("id").get<std::string>();
            d.color = mj.at("color").get<std::string>();
            d.row = mj.at("row").get<int>();
            d.compress = mj.value("compress", false);
            if (mj.contains("shift"))
                d.shift = parse_constant(mj.at("shift").get<std::string>()).rational();
            d.slide = mj.value("slide", false);
            movements.push_back(std::move(d));
        }
        if (mut.has("shift")) {
            mpq_class s = parse_constant(mut.get("shift")).rational();
            for (auto& d : movements)
                if (d.shift != 0) d.shift = s;
        }

        // ---- cases
        nlohmann::json cases = script.value("cases", nlohmann::json::array());
        if (cases.empty()) {
            nlohmann::json single;
            single["id"] = "main";
            single["exceptional_row"] = 0;
            cases.push_back(single);
        }
        for (auto& cj : cases) {
            Verdict v = run_case(script, cj, certs, movements, m, packing_size,
                                 exact_cover_colors, have_localization, solo_threshold, mut, rep);
            all = all && v;
        }

        if (all == Verdict::True) {
            res.conclusion = script.value("conclusion", "");
            rep.step("proof." + name, "every case reaches a certified contradiction: " +
                                          res.conclusion, Verdict::True);
            // upper bound from the trivial packing, rendering the equality
            int n = packing_size;
            int mm = (int)m.to_interval().mid();
            PackingInstance tp = trivial_packing(n, mm);
            PackingReport pr = validate_packing(tp);
            rep.step("packing.trivial",
                     "trivial packing of " + std::to_string(n) + " unit squares in side " +
                         std::to_string(mm) + " validates",
                     pr.verdict);
            if (pr.verdict == Verdict::True)
                rep.note("combined: s(" + std::to_string(n) + ") = " + std::to_string(mm));
            all = all && pr.verdict;
        }
        res.verdict = all;
    }

    // all blue pairs within an open box's diameter stay within |dx| <= 1, the
    // configuration is mirror-symmetric, and the rows used for movements are
    // pairwise farther apart than the diameter
    Verdict check_localization(const Configuration& config, const std::string& color,
                               const Exact& m, const Exact& threshold, Report& rep) {
        Exact diam2 = frac(101, 100) * frac(101, 100) * Exact(2);  // (1.01*sqrt(2))^2
        bool sym = true;
        std::vector<const ConfigPoint*> pts;
        for (auto& p : config.points)
            if (p.color == color) pts.push_back(&p);
        for (auto& p : pts) {
            EPt mirrored{m - p->pos.x, p->pos.y};
            bool found = false;
            for (auto& q : pts)
                if (q->pos == mirrored) {
                    found = true;
                    break;
                }
            if (!found) sym = false;
        }
        rep.fact("localize.symmetry", color + " configuration is invariant under x -> m-x", sym);

        bool dx_ok = true;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j) {
                Exact d2 = dist2(pts[i]->pos, pts[j]->pos);
                if (d2 < diam2) {
                    Exact dx = pts[i]->pos.x - pts[j]->pos.x;
                    if (dx.sign() < 0) dx = -dx;
                    if (!(dx <= Exact(1))) dx_ok = false;
                }
            }
        rep.fact("localize.pair_dx",
                 "any two " + color + " points within a box diameter differ by at most 1 in x",
                 dx_ok);
        // threshold + 1 reflected stays at least threshold: m - (threshold+1) >= threshold
        bool refl_ok = (m - threshold - Exact(1)) >= threshold;
        rep.fact("localize.reflection",
                 "a pair with a member left of the threshold reflects to the right of it",
                 refl_ok);
        return (sym && dx_ok && refl_ok) ? Verdict::True : Verdict::False;
    }

    Verdict coverage_cached(const std::vector<EPolygon>& regions, const Exact& m) {
        std::string key = m.str();
        for (auto& r : regions) {
            for (auto& v : r.v) key += "|" + v.x.str() + "," + v.y.str();
            key += ";";
        }
        auto it = coverage_cache_.find(key);
        if (it == coverage_cache_.end())
            it = coverage_cache_.emplace(key, polygons_cover_square(regions, m)).first;
        return it->second.verdict;
    }

    // verify_schedule with phase-endpoint coverage routed through the cache
    ScheduleResult verify_schedule_cached(const MovementSchedule& ms, Report& rep) {
        return verify_schedule(ms, rep, [this](const std::vector<EPolygon>& regions,
                                               const Exact& m) {
            return coverage_cached(regions, m);
        });
    }

    Verdict run_case(const nlohmann::json& script, const nlohmann::json& cj,
                     std::map<std::string, proofs_detail::LoadedCert>& certs,
                     const std::vector<proofs_detail::MovementDecl>& movements, const Exact& m,
                     int packing_size, const std::set<std::string>& exact_cover_colors,
                     bool have_localization, const Exact& solo_threshold, const Mutations& mut,
                     Report& rep) {
        std::string case_id = cj.at("id").get<std::string>();
        int exceptional_row = cj.value("exceptional_row", 0);
        Verdict all = Verdict::True;
        rep.note("case '" + case_id + "'" +
                 (exceptional_row > 0
                      ? ": one restricted point sits in row " + std::to_string(exceptional_row)
                      : ""));

        Exact slide_to = mut.has("slide-to") ? parse_constant(mut.get("slide-to")) : Exact(1);

        // ---- schedules
        std::map<std::string, ScheduleResult> sched_results;
        std::map<std::string, const MovementSchedule*> sched_ptrs;
        std::vector<std::unique_ptr<MovementSchedule>> owned;
        std::string exceptional_color = cj.value("exceptional_color", "blue");
        for (auto& d : movements) {
            RowScheduleSpec spec;
            spec.target_row = d.row;
            spec.compress = d.compress;
            spec.shift = d.shift;
            spec.slide = d.slide;
            spec.slide_to = slide_to;
            const Configuration& config = certs.at(d.color).cert.config;
            bool is_exceptional =
                exceptional_row > 0 && d.color == exceptional_color && d.row == exceptional_row;
            if (is_exceptional) {
                // the restricted point may be any of the row's points not
                // guaranteed solo; the whole-row shift is dropped and every
                // point right of the threshold must stay put
                spec.shift = 0;
                for (auto& p : config.points)
                    if (p.color == d.color && p.row == d.row &&
                        !(p.pos.x < solo_threshold))
                        spec.restricted.insert(p.id);
                if (!have_localization) {
                    rep.fact(case_id + "." + d.id,
                             "exceptional row without a localization assumption", false);
                    all = Verdict::False;
                    continue;
                }
            }
            auto ms = std::make_unique<MovementSchedule>(
                make_row_schedule(config, d.color, spec, d.id));
            // headline audit inequalities behind the movement's validity
            {
                std::vector<Exact> heights;
                if (!ms->target_heights.empty()) heights = ms->target_heights;
                else
                    for (auto& r : rows_from_config(config, d.color)) heights.push_back(r.y.at0());
                size_t ti = (size_t)d.row - 1;
                Exact gap(0);
                if (ti > 0 && heights[ti] - heights[ti - 1] > gap) gap = heights[ti] - heights[ti - 1];
                if (ti + 1 < heights.size() && heights[ti + 1] - heights[ti] > gap)
                    gap = heights[ti + 1] - heights[ti];
                if (spec.compress) {
                    Exact headline = Exact(2) * (sqrt2() - frac(1, 2)) + Exact(2) * frac(4, 5) +
                                     Exact(3) * (Exact::sqrt_rational(3) * frac(1, 2));
                    Verdict vh = (headline > Exact(6)) ? Verdict::True : Verdict::False;
                    rep.inequality("compress.headline",
                                   "2(sqrt(2)-1/2) + 2*0.8 + 3*(sqrt(3)/2) > 6",
                                   headline.to_interval(), ">", Exact(6).to_interval(), vh);
                    all = all && vh;
                    Verdict vg = (gap <= frac(4, 5)) ? Verdict::True : Verdict::False;
                    rep.inequality("compress.gap_le_0.8",
                                   "compressed adjacent row distance <= 0.8",
                                   gap.to_interval(), "<=", frac(4, 5).to_interval(), vg);
                    all = all && vg;
                }
                if (spec.shift != 0) {
                    Exact reach = Exact(mpq_class(spec.shift)) + frac(1, 2);
                    Exact crit2 = reach * reach + gap * gap;
                    Verdict vc = (crit2 <= Exact(1)) ? Verdict::True : Verdict::False;
                    rep.inequality("shift.crit_dist_le_1",
                                   "squared distance to critical neighbours stays <= 1 at full "
                                   "shift",
                                   crit2.to_interval(), "<=", Exact(1).to_interval(), vc);
                    all = all && vc;
                }
                if (spec.slide) {
                    Exact lim = Exact(2) * sqrt2() - Exact(2);
                    Verdict vs = (gap < lim) ? Verdict::True : Verdict::False;
                    rep.inequality("slide.gap_lt_2sqrt2m2",
                                   "adjacent row distance below 2*sqrt(2)-2 enables the slide",
                                   gap.to_interval(), "<", lim.to_interval(), vs);
                    all = all && vs;
                }
            }
            Report sub;
            ScheduleResult sr = verify_schedule_cached(*ms, sub);
            rep.step(case_id + "." + d.id,
                     "movement schedule (" + d.color + " row " + std::to_string(d.row) +
                         (spec.compress ? ", compression" : "") +
                         (spec.shift != 0 ? ", shift" : "") + (spec.slide ? ", slide" : "") +
                         ")",
                     sr.verdict);
            if (sr.verdict != Verdict::True) rep.merge(sub);
            all = all && sr.verdict;
            if (!ms->target_heights.empty()) {
                std::string hs;
                for (auto& h : ms->target_heights) hs += h.str() + " ";
                rep.note(d.id + " compression target heights: " + hs);
            }
            sched_results.emplace(d.id, std::move(sr));
            sched_ptrs.emplace(d.id, ms.get());
            owned.push_back(std::move(ms));
        }
        if (all != Verdict::True) return all;

        // ---- obligation classes
        struct BuiltClass {
            ObligationClass cls;
            EPt covered;
            Exact row_y;
            bool full = true;
            EPt distinct_pt;
            std::string distinct_color;
        };
        std::vector<BuiltClass> built;
        for (auto& klass : cj.contains("classes") ? cj.at("classes") : script.at("classes")) {
            BuiltClass bc;
            bc.cls.id = case_id + "." + klass.at("id").get<std::string>();
            for (auto& mem : klass.at("members")) {
                std::string mid = mem.at("movement").get<std::string>();
                std::string pid = mem.at("point").get<std::string>();
                auto it = sched_results.find(mid);
                if (it == sched_results.end()) throw CertError("unknown movement " + mid);
                const Obligation* found = nullptr;
                for (auto& ob : it->second.obligations)
                    if (ob.point_id == pid) found = &ob;
                if (!found) throw CertError("unknown obligation point " + pid);
                bc.cls.members.push_back(*found);
            }
            if (klass.contains("shared"))
                for (auto& sj : klass.at("shared"))
                    bc.cls.shared.push_back(proofs_detail::parse_pt(sj));
            bc.row_y = parse_constant(klass.at("row_y").get<std::string>());
            bc.full = !(exceptional_row > 0 &&
                        klass.value("exceptional_when_row", -1) == exceptional_row);
            // the exceptional class only covers from the slide start onward
            const auto& seg = klass.at("segment");
            Exact x0 = parse_constant(seg.at(bc.full ? "x0" : "x0_exceptional").get<std::string>());
            Exact x1 = parse_constant(seg.at("x1").get<std::string>());
            bc.covered = EPt{x0, bc.row_y};

            Verdict merged = verify_class_merge(bc.cls, rep) ? Verdict::True : Verdict::False;
            Verdict covers =
                class_covers_segment(bc.cls, x0, x1, bc.row_y) ? Verdict::True : Verdict::False;
            rep.step(bc.cls.id,
                     "class sweep covers [" + x0.str() + ", " + x1.str() + "] x {" +
                         bc.row_y.str() + "}",
                     merged && covers);
            all = all && merged && covers;

            bc.distinct_pt = proofs_detail::parse_pt(klass.at("distinct_point"));
            bc.distinct_color = klass.at("distinct_color").get<std::string>();
            built.push_back(std::move(bc));
        }
        if (all != Verdict::True) return all;

        // distinctness: each class contains a distinct configuration point of
        // an exactly-covered color
        {
            bool ok = true;
            for (size_t i = 0; i < built.size(); ++i) {
                const BuiltClass& bc = built[i];
                if (!exact_cover_colors.count(bc.distinct_color)) ok = false;
                const Configuration& cfg = certs.at(bc.distinct_color).cert.config;
                bool is_config = false;
                for (auto& p : cfg.points)
                    if (p.color == bc.distinct_color && p.pos == bc.distinct_pt) is_config = true;
                if (!is_config) ok = false;
                bool on_sweep = false;
                for (auto& mem : bc.cls.members)
                    if (point_on_polyline(bc.distinct_pt, mem.waypoints)) on_sweep = true;
                if (!on_sweep) ok = false;
                for (size_t j = i + 1; j < built.size(); ++j)
                    if (built[j].distinct_pt == bc.distinct_pt) ok = false;
            }
            rep.fact(case_id + ".distinct",
                     "classes anchor pairwise distinct exactly-covered points, so they occupy "
                     "distinct boxes",
                     ok);
            if (!ok) return Verdict::False;
        }

        // ---- resource line
        const auto& rj = script.at("resource");
        ResourceLine line;
        line.line_x = mut.has("line-x") ? parse_constant(mut.get("line-x"))
                                        : parse_constant(rj.at("line_x").get<std::string>());
        line.y0 = Exact(0);
        line.y1 = m;
        Exact capacity_override;
        bool has_capacity_override = mut.has("line-capacity");
        if (has_capacity_override) capacity_override = parse_constant(mut.get("line-capacity"));

        std::vector<ResourceClassInput> rcls;
        int exceptional_index = -1;
        for (size_t i = 0; i < built.size(); ++i) {
            ResourceClassInput in;
            in.id = built[i].cls.id;
            in.cls = &built[i].cls;
            in.covered = built[i].covered;
            in.row_y = built[i].row_y;
            in.full = built[i].full;
            if (!built[i].full) exceptional_index = (int)i;
            rcls.push_back(in);
        }
        ResourceOutcome ro = line_resource_argument(line, rcls, exceptional_index, m,
                                                    has_capacity_override ? &capacity_override
                                                                          : nullptr);
        rep.merge(ro.report);
        if (exceptional_index < 0) {
            rep.step(case_id + ".resource",
                     "per-box line intersections exceed the line capacity: contradiction",
                     ro.contradiction);
            return all && ro.contradiction;
        }
        rep.step(case_id + ".resource", "chord window derived for the short box",
                 ro.contradiction);
        all = all && ro.contradiction;
        if (all != Verdict::True || !ro.window) return Verdict::False;

        // ---- midpoint region analysis
        const auto& mj = cj.at("midpoint");
        EPt covered = proofs_detail::parse_pt(mj.at("covered"));
        // the covered point must be the exceptional class's covered point
        if (!(covered == built[(size_t)exceptional_index].covered)) {
            rep.fact(case_id + ".midpoint", "midpoint covered point mismatch", false);
            return Verdict::False;
        }

        std::vector<MpConstraint> cs;
        {
            MpConstraint hp;
            hp.type = MpConstraint::Type::HalfPlaneXGE;
            hp.x_min = line.line_x + (sqrt2() - Exact(1)) * frac(1, 2);
            hp.why = "centre left of or close to the line would force a chord > 1";
            cs.push_back(hp);
            // justify: both excluded-centre cases give chords exceeding the slack
            Report sub;
            LineBound pl = parallel_lines_bound(line.line_x, sub);
            LineBound clb = close_line_bound(((sqrt2() - Exact(1)) * frac(1, 2)) *
                                                 ((sqrt2() - Exact(1)) * frac(1, 2)),
                                             sub);
            rep.merge(sub);
            if (pl.ok != Verdict::True || clb.ok != Verdict::True) {
                rep.fact(case_id + ".midpoint", "centre-exclusion lemmas failed", false);
                return Verdict::False;
            }
        }
        for (auto& dj : mj.at("denied_used")) {
            EPt g = proofs_detail::parse_pt(dj);
            // certified denial: g on the line with its height outside the window
            bool on_line = g.x == line.line_x;
            bool outside = (g.y <= ro.window->lo) || (g.y >= ro.window->hi);
            rep.fact(case_id + ".denied",
                     "point (" + g.x.str() + ", " + g.y.str() + ") is denied to the short box",
                     on_line && outside);
            if (!(on_line && outside)) return Verdict::False;
            MpConstraint d;
            d.type = MpConstraint::Type::DiskOut;
            d.center = g;
            d.r2 = frac(1, 4);
            d.why = "denied point";
            cs.push_back(d);
        }
        {
            MpConstraint din;
            din.type = MpConstraint::Type::DiskIn;
            din.center = covered;
            din.r2 = frac(101, 200) * frac(101, 200) * Exact(2);  // (0.505*sqrt(2))^2
            din.why = "covered point within the half-diagonal of a maximal box";
            cs.push_back(din);
        }
        MpRegion reg = feasible_midpoint_region(cs);
        for (auto& c : reg.corners) {
            rep.note("midpoint region boundary intersection at x=" + fmt_interval(c.x) +
                     " y=" + fmt_interval(c.y) +
                     (c.feasible == Verdict::False ? " (infeasible)" : ""));
        }

        EPt target = proofs_detail::parse_pt(mj.at("target"));
        Report disk_rep;
        Verdict in_disk = region_in_disk(reg, target, frac(1, 2), disk_rep);
        rep.merge(disk_rep);
        rep.step(case_id + ".region_in_disk",
                 "every feasible centre lies within 1/2 of (" + target.x.str() + ", " +
                     target.y.str() + "), so the short box covers it",
                 in_disk);
        all = all && in_disk;
        if (all != Verdict::True) return Verdict::False;

        // ---- the contradiction
        std::string tk = mj.at("target_kind").get<std::string>();
        if (tk == "denied") {
            bool is_denied = false;
            for (auto& dj : mj.at("denied_used"))
                if (proofs_detail::parse_pt(dj) == target) is_denied = true;
            rep.fact(case_id + ".contradiction",
                     "the short box both covers and is denied the target point", is_denied);
            if (!is_denied) return Verdict::False;
        } else if (tk == "pair") {
            // the box covers two distinct solo-guaranteed points of the
            // localization color
            EPt other = proofs_detail::parse_pt(mj.at("pair_with"));
            std::string pc = mj.at("pair_color").get<std::string>();
            const Configuration& cfg = certs.at(pc).cert.config;
            auto is_pt = [&](const EPt& p) {
                for (auto& q : cfg.points)
                    if (q.color == pc && q.pos == p) return true;
                return false;
            };
            bool ok = have_localization && is_pt(target) && is_pt(other) && !(target == other) &&
                      target.x < solo_threshold && other.x < solo_threshold;
            // `other` must be covered by the same box (it lies on the sweep)
            bool other_on = point_on_polyline(other, built[(size_t)exceptional_index]
                                                         .cls.members.front()
                                                         .waypoints);
            for (auto& mem : built[(size_t)exceptional_index].cls.members)
                if (point_on_polyline(other, mem.waypoints)) other_on = true;
            rep.fact(case_id + ".contradiction",
                     "the short box covers two " + pc +
                         " points left of the threshold, violating the solo assumption",
                     ok && other_on);
            if (!(ok && other_on)) return Verdict::False;
        } else {
            throw CertError("unknown target_kind: " + tk);
        }
        return Verdict::True;
    }
};

} // namespace unav

#pragma once

// Unavoidable-set certificates: a container square, a colored point
// configuration, and a region decomposition with per-region lemma
// applications.  Verification certifies that the regions cover the
// container, every application's hypotheses hold, and every escape lies on
// the container boundary, so that a packed box with centre anywhere must
// contain a configuration point of the certificate's color.
//
// File format (JSON; all coordinates in the symbolic constant grammar):
//   {
//     "container": {"side": "6"},
//     "points": [{"id": "...", "x": "...", "y": "...", "color": "red", "row": 1}, ...],
//     "certificates": [{"color": "red", "applications": [
//         {"id": "...", "kind": "triangle|rect_edge|quad_edge|quad_edge_small_a",
//          "region": [["x","y"], ...],
//          "anchors": [{"point": "id"} | {"boundary": ["x","y"]}, ...],
//          "escapes": [[["x","y"], ["x","y"]], ...]}, ...]}]
//   }

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lemmas.hpp"
#include "report.hpp"
#include "symbolic.hpp"

namespace unav {

struct ConfigPoint {
    std::string id;
    EPt pos;
    std::string color;
    int row = -1;  // -1 when the configuration is not row-structured
};

struct Configuration {
    Exact side;
    std::vector<ConfigPoint> points;

    std::map<std::string, EPt> points_of_color(const std::string& color) const {
        std::map<std::string, EPt> out;
        for (auto& p : points)
            if (p.color == color) out.emplace(p.id, p.pos);
        return out;
    }
    int count_color(const std::string& color) const {
        int n = 0;
        for (auto& p : points)
            if (p.color == color) ++n;
        return n;
    }
};

struct Certificate {
    Configuration config;
    std::string color;
    std::vector<LemmaApp> apps;
};

struct CertFile {
    Configuration config;
    std::vector<Certificate> certs;  // one per color section

    const Certificate& by_color(const std::string& color) const {
        for (auto& c : certs)
            if (c.color == color) return c;
        throw CertError("no certificate for color '" + color + "'");
    }
};

// ---------------------------------------------------------------- parsing

namespace detail {

inline EPt parse_ept(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw CertError("point must be [x, y]");
    return EPt{parse_constant(j[0].get<std::string>()), parse_constant(j[1].get<std::string>())};
}

inline LemmaKind parse_kind(const std::string& s) {
    if (s == "triangle") return LemmaKind::Triangle;
    if (s == "rect_edge") return LemmaKind::RectEdge;
    if (s == "quad_edge") return LemmaKind::QuadEdge;
    if (s == "quad_edge_small_a") return LemmaKind::QuadEdgeSmallA;
    throw CertError("unknown lemma kind '" + s + "'");
}

} // namespace detail

inline CertFile parse_cert_json(const nlohmann::json& j) {
    CertFile f;
    f.config.side = parse_constant(j.at("container").at("side").get<std::string>());
    if (f.config.side.sign() <= 0) throw CertError("container side must be positive");
    for (auto& pj : j.at("points")) {
        ConfigPoint p;
        p.id = pj.at("id").get<std::string>();
        p.pos = EPt{parse_constant(pj.at("x").get<std::string>()),
                    parse_constant(pj.at("y").get<std::string>())};
        p.color = pj.value("color", "black");
        p.row = pj.value("row", -1);
        f.config.points.push_back(std::move(p));
    }
    for (auto& cj : j.at("certificates")) {
        Certificate c;
        c.config = f.config;
        c.color = cj.value("color", "black");
        for (auto& aj : cj.at("applications")) {
            LemmaApp app;
            app.id = aj.at("id").get<std::string>();
            app.kind = detail::parse_kind(aj.at("kind").get<std::string>());
            for (auto& vj : aj.at("region")) app.region.push_back(detail::parse_ept(vj));
            for (auto& anj : aj.at("anchors")) {
                Anchor an;
                if (anj.contains("point")) {
                    an.point_id = anj.at("point").get<std::string>();
                    // position resolved below from the configuration
                } else if (anj.contains("boundary")) {
                    an.boundary = true;
                    an.pos = detail::parse_ept(anj.at("boundary"));
                } else {
                    throw CertError("anchor must name a point or a boundary position");
                }
                app.anchors.push_back(std::move(an));
            }
            if (aj.contains("escapes"))
                for (auto& ej : aj.at("escapes"))
                    app.escapes.emplace_back(detail::parse_ept(ej[0]), detail::parse_ept(ej[1]));
            app.rect_convention = aj.value("anchor_convention", "top_corners");
            c.apps.push_back(std::move(app));
        }
        // fill anchor positions from the configuration (ids that do not
        // resolve keep a null position and fail anchor checking later)
        auto pts = f.config.points_of_color(c.color);
        for (auto& app : c.apps)
            for (auto& an : app.anchors)
                if (!an.boundary) {
                    auto it = pts.find(an.point_id);
                    if (it != pts.end()) an.pos = it->second;
                }
        f.certs.push_back(std::move(c));
    }
    return f;
}

inline CertFile load_cert_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CertError("cannot open certificate file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("certificate JSON parse error: ") + e.what());
    }
    try {
        return parse_cert_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("certificate schema error: ") + e.what());
    }
}

// -------------------------------------------------------------- writing

inline nlohmann::json cert_file_to_json(const CertFile& f) {
    nlohmann::json j;
    j["container"]["side"] = f.config.side.str();
    j["points"] = nlohmann::json::array();
    for (auto& p : f.config.points) {
        nlohmann::json pj;
        pj["id"] = p.id;
        pj["x"] = p.pos.x.str();
        pj["y"] = p.pos.y.str();
        pj["color"] = p.color;
        if (p.row >= 0) pj["row"] = p.row;
        j["points"].push_back(std::move(pj));
    }
    j["certificates"] = nlohmann::json::array();
    for (auto& c : f.certs) {
        nlohmann::json cj;
        cj["color"] = c.color;
        cj["applications"] = nlohmann::json::array();
        for (auto& app : c.apps) {
            nlohmann::json aj;
            aj["id"] = app.id;
            aj["kind"] = kind_name(app.kind);
            aj["region"] = nlohmann::json::array();
            for (auto& v : app.region)
                aj["region"].push_back({v.x.str(), v.y.str()});
            aj["anchors"] = nlohmann::json::array();
            for (auto& an : app.anchors) {
                nlohmann::json anj;
                if (an.boundary) anj["boundary"] = {an.pos.x.str(), an.pos.y.str()};
                else anj["point"] = an.point_id;
                aj["anchors"].push_back(std::move(anj));
            }
            if (!app.escapes.empty()) {
                aj["escapes"] = nlohmann::json::array();
                for (auto& [p, q] : app.escapes) {
                    nlohmann::json ej = nlohmann::json::array();
                    ej.push_back(nlohmann::json::array({p.x.str(), p.y.str()}));
                    ej.push_back(nlohmann::json::array({q.x.str(), q.y.str()}));
                    aj["escapes"].push_back(std::move(ej));
                }
            }
            if (app.rect_convention != "top_corners")
                aj["anchor_convention"] = app.rect_convention;
            cj["applications"].push_back(std::move(aj));
        }
        j["certificates"].push_back(std::move(cj));
    }
    return j;
}

// ----------------------------------------------------------- verification

struct VerifyResult {
    Verdict verdict = Verdict::Indeterminate;
    Report report;
};

inline VerifyResult verify_certificate(const Certificate& cert) {
    VerifyResult res;
    Report& rep = res.report;
    const Exact& m = cert.config.side;
    Verdict all = Verdict::True;

    // configuration sanity: points strictly inside, unique ids
    std::map<std::string, int> seen;
    bool points_ok = true;
    for (auto& p : cert.config.points) {
        if (++seen[p.id] > 1) {
            rep.fact("config.unique_ids", "duplicate point id '" + p.id + "'", false);
            points_ok = false;
        }
        bool inside = p.pos.x.sign() > 0 && p.pos.y.sign() > 0 && p.pos.x < m && p.pos.y < m;
        if (!inside) {
            rep.fact("config.inside", "point '" + p.id + "' is not strictly inside", false);
            points_ok = false;
        }
    }
    rep.fact("config.valid", "configuration points strictly inside, ids unique", points_ok);
    if (!points_ok) all = Verdict::False;

    AnchorContext ctx;
    auto pts = cert.config.points_of_color(cert.color);
    ctx.points = &pts;
    ctx.container = m;

    std::vector<EPolygon> regions;
    for (auto& app : cert.apps) {
        Report sub;
        Verdict v = check_lemma(app, ctx, sub);
        rep.step(app.id, std::string(kind_name(app.kind)) + " application", v);
        rep.merge(sub);
        all = all && v;
        regions.push_back(app_polygon(app));
    }

    CoverageResult cov = polygons_cover_square(regions, m);
    rep.step("coverage", "lemma regions cover the container square", cov.verdict);
    if (cov.verdict == Verdict::False && cov.witness) {
        rep.note("uncovered witness at (" + cov.witness->x.str() + ", " + cov.witness->y.str() +
                 ")");
    }
    all = all && cov.verdict;

    res.verdict = all;
    int n = cert.config.count_color(cert.color);
    if (all == Verdict::True)
        rep.note("unavoidable: every packed box contains one of the " + std::to_string(n) + " " +
                 cert.color + " points; at most " + std::to_string(n) + " boxes fit");
    return res;
}

struct BoundRecord {
    int t = 0;            // point count
    Exact side;           // container side
    std::string claim;    // s(t+1) >= side
    bool vacuous = false; // bound does not beat the target packing size
};

inline BoundRecord count_bound(const Certificate& cert, const VerifyResult& vr,
                               int target_packing = -1) {
    if (vr.verdict != Verdict::True) throw CertError("count_bound requires a verified certificate");
    BoundRecord b;
    b.t = cert.config.count_color(cert.color);
    b.side = cert.config.side;
    b.claim = "s(" + std::to_string(b.t + 1) + ") >= " + b.side.str();
    if (target_packing >= 0 && b.t >= target_packing + 1) b.vacuous = true;
    if (target_packing >= 0 && b.t > target_packing) b.vacuous = true;
    return b;
}

// -------------------------------------------------------------- falsifier

struct FalsifyOptions {
    double step = 0.02;          // centre grid step
    double angle_step_deg = 1.0; // angle grid step in degrees
    double side = 1.001;
    int threads = 0;             // 0 = hardware/UNAVOIDABLE_THREADS
};

struct FalsificationResult {
    bool found = false;
    double cx = 0, cy = 0, angle = 0, side = 0;
    long cells = 0;
    std::string disclaimer =
        "found=false is not a proof of unavoidability: the grid has gaps";
};

namespace detail {

inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("UNAVOIDABLE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : (int)hc;
}

} // namespace detail

// Exhaustive grid scan for a certified empty box: a box (open interior)
// inside the closed container containing no configuration point of the
// color.  All verdicts must be certified False for a witness; Indeterminate
// containment disqualifies a cell.  Deterministic: the first witness in
// lexicographic (ix, iy, ia) order is returned.
//
// Cells are prescreened in double arithmetic: when some point lies inside
// the box with margin far above double rounding error, the interval check
// could never certify the cell empty, so skipping it is faithful to the
// certified-witness semantics.
inline FalsificationResult falsify(const Configuration& config, const std::string& color,
                                   const FalsifyOptions& opt = {}) {
    if (opt.step <= 0 || opt.angle_step_deg <= 0) throw CertError("grid steps must be positive");
    FalsificationResult out;
    double m = config.side.to_interval().lo;
    std::vector<Pt> pts;
    std::vector<std::pair<double, double>> dpts;
    for (auto& p : config.points)
        if (p.color == color) {
            pts.push_back(p.pos.to_interval());
            dpts.emplace_back(p.pos.x.approx(), p.pos.y.approx());
        }

    long nx = (long)std::floor(m / opt.step) + 1;
    long na = (long)std::ceil(90.0 / opt.angle_step_deg);
    Interval mI = config.side.to_interval();
    Interval deg = pi() / Interval::exact(180.0);

    struct AngleData {
        Interval angle;
        Interval cos_i, sin_i;
        double c, s;
    };
    std::vector<AngleData> angles((size_t)na);
    for (long ia = 0; ia < na; ++ia) {
        AngleData& ad = angles[(size_t)ia];
        ad.angle = Interval::exact(double(ia) * opt.angle_step_deg) * deg;
        ad.cos_i = cos(ad.angle);
        ad.sin_i = sin(ad.angle);
        ad.c = ad.cos_i.mid();
        ad.s = ad.sin_i.mid();
    }
    const double half_d = 0.5 * opt.side;
    const double margin = 1e-6;

    const long total = nx * nx * na;
    std::atomic<long> next_chunk{0};
    std::atomic<long> best{total};
    int nthreads = detail::effective_threads(opt.threads);

    auto certify_cell = [&](double cx, double cy, const AngleData& ad) -> bool {
        Box b{{Interval::exact(cx), Interval::exact(cy)}, ad.angle, Interval::exact(opt.side)};
        Pt u{ad.cos_i, ad.sin_i}, v{-ad.sin_i, ad.cos_i};
        Interval half = b.side * Interval::exact(0.5);
        Interval ext_x = half * (abs(u.x) + abs(v.x));
        Interval ext_y = half * (abs(u.y) + abs(v.y));
        bool inside = cmp(Interval::exact(cx) - ext_x, Interval::exact(0.0), Rel::GE) ==
                          Verdict::True &&
                      cmp(Interval::exact(cx) + ext_x, mI, Rel::LE) == Verdict::True &&
                      cmp(Interval::exact(cy) - ext_y, Interval::exact(0.0), Rel::GE) ==
                          Verdict::True &&
                      cmp(Interval::exact(cy) + ext_y, mI, Rel::LE) == Verdict::True;
        if (!inside) return false;
        for (auto& p : pts) {
            Pt d = p - b.center;
            Interval du = abs(d.x * u.x + d.y * u.y);
            Interval dv = abs(d.x * v.x + d.y * v.y);
            bool outside = cmp(du, half, Rel::GE) == Verdict::True ||
                           cmp(dv, half, Rel::GE) == Verdict::True;
            if (!outside) return false;
        }
        return true;
    };

    auto worker = [&]() {
        for (;;) {
            long ix = next_chunk.fetch_add(1);
            if (ix >= nx) return;
            long base = ix * nx * na;
            if (base >= best.load(std::memory_order_relaxed)) return;
            double cx = ix * opt.step;
            // container prescreen along x
            if (cx - half_d * 1.4143 > m) continue;
            for (long iy = 0; iy < nx; ++iy) {
                double cy = iy * opt.step;
                for (long ia = 0; ia < na; ++ia) {
                    long cell = base + iy * na + ia;
                    if (cell >= best.load(std::memory_order_relaxed)) break;
                    const AngleData& ad = angles[(size_t)ia];
                    bool maybe_empty = true;
                    for (auto& [px, py] : dpts) {
                        double dx = px - cx, dy = py - cy;
                        double du = std::abs(dx * ad.c + dy * ad.s);
                        double dv = std::abs(-dx * ad.s + dy * ad.c);
                        if (du < half_d - margin && dv < half_d - margin) {
                            maybe_empty = false;
                            break;
                        }
                    }
                    if (!maybe_empty) continue;
                    if (certify_cell(cx, cy, ad)) {
                        long cur = best.load();
                        while (cell < cur && !best.compare_exchange_weak(cur, cell)) {}
                        return;
                    }
                }
            }
        }
    };
    std::vector<std::thread> threads;
    for (int i = 0; i < nthreads; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    out.cells = total;
    long b = best.load();
    if (b < total) {
        out.found = true;
        long ix = b / (nx * na);
        long rem = b % (nx * na);
        long iy = rem / na;
        long ia = rem % na;
        out.cx = ix * opt.step;
        out.cy = iy * opt.step;
        out.angle = ia * opt.angle_step_deg;
        out.side = opt.side;
    }
    return out;
}

} // namespace unav

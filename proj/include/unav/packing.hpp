#pragma once

// Packing validation and the trivial chessboard constructions.
//
// Two regimes share one type: unit squares (side exactly 1, closed boxes,
// shared edges allowed) validate the upper-bound constructions, while boxes
// (open interiors, side in (1, 1.01]) support the lower-bound arguments.
// Validation certifies closed containment in the container plus pairwise
// disjoint open interiors.

#include <fstream>

#include <json.hpp>

#include "certificate.hpp"
#include "geometry.hpp"
#include "symbolic.hpp"

namespace unav {

enum class PackingRegime { UnitSquares, Boxes };

struct PackingInstance {
    Exact side;  // container side
    PackingRegime regime = PackingRegime::UnitSquares;
    struct Entry {
        Exact cx, cy;
        Exact angle_deg;  // multiples of degrees keep the file exact; interval beyond
        Exact box_side;
    };
    std::vector<Entry> boxes;
};

inline PackingInstance load_packing_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CertError("cannot open packing file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("packing JSON parse error: ") + e.what());
    }
    PackingInstance p;
    try {
        p.side = parse_constant(j.at("container").at("side").get<std::string>());
        std::string regime = j.value("regime", "unit");
        p.regime = regime == "boxes" ? PackingRegime::Boxes : PackingRegime::UnitSquares;
        for (auto& bj : j.at("boxes")) {
            PackingInstance::Entry e;
            e.cx = parse_constant(bj.at("cx").get<std::string>());
            e.cy = parse_constant(bj.at("cy").get<std::string>());
            e.angle_deg = parse_constant(bj.value("angle_deg", "0"));
            e.box_side = parse_constant(bj.value("side", regime == "boxes" ? "1.001" : "1"));
            p.boxes.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("packing schema error: ") + e.what());
    }
    return p;
}

inline Box to_box(const PackingInstance::Entry& e) {
    Interval ang = e.angle_deg.to_interval() * pi() / Interval::exact(180.0);
    return Box{{e.cx.to_interval(), e.cy.to_interval()}, ang, e.box_side.to_interval()};
}

struct PackingReport {
    Verdict verdict = Verdict::Indeterminate;
    Report report;
};

inline PackingReport validate_packing(const PackingInstance& p) {
    PackingReport out;
    Report& rep = out.report;
    Verdict all = Verdict::True;
    Interval m = p.side.to_interval();

    for (size_t i = 0; i < p.boxes.size(); ++i) {
        const auto& e = p.boxes[i];
        // side regime
        Interval side = e.box_side.to_interval();
        Verdict side_ok;
        if (p.regime == PackingRegime::UnitSquares) {
            side_ok = (e.box_side == Exact(1)) ? Verdict::True : Verdict::False;
        } else {
            bool gt1 = Exact(1) < e.box_side;
            bool le = e.box_side <= frac(101, 100);
            side_ok = (gt1 && le) ? Verdict::True : Verdict::False;
        }
        if (side_ok != Verdict::True)
            rep.fact("packing.side_regime", "box " + std::to_string(i) + " side outside regime",
                     false);
        all = all && side_ok;

        // closed box within the closed container
        Box b = to_box(e);
        Interval half = b.side * Interval::exact(0.5);
        Pt u = b.axis_u(), v = b.axis_v();
        Interval ext_x = half * (abs(u.x) + abs(v.x));
        Interval ext_y = half * (abs(u.y) + abs(v.y));
        Verdict inside = cmp(b.center.x - ext_x, Interval::exact(0.0), Rel::GE) &&
                         cmp(b.center.x + ext_x, m, Rel::LE) &&
                         cmp(b.center.y - ext_y, Interval::exact(0.0), Rel::GE) &&
                         cmp(b.center.y + ext_y, m, Rel::LE);
        if (inside != Verdict::True)
            rep.step("packing.containment",
                     "box " + std::to_string(i) + " containment in the container", inside);
        all = all && inside;
    }

    for (size_t i = 0; i < p.boxes.size(); ++i) {
        Box bi = to_box(p.boxes[i]);
        for (size_t j = i + 1; j < p.boxes.size(); ++j) {
            Box bj = to_box(p.boxes[j]);
            Verdict ov = boxes_overlap(bi, bj);
            Verdict disjoint = ov == Verdict::False
                                   ? Verdict::True
                                   : (ov == Verdict::True ? Verdict::False
                                                          : Verdict::Indeterminate);
            if (disjoint != Verdict::True)
                rep.step("packing.disjoint",
                         "boxes " + std::to_string(i) + "," + std::to_string(j) +
                             " open interiors disjoint",
                         disjoint);
            all = all && disjoint;
        }
    }
    rep.step("packing.valid", std::to_string(p.boxes.size()) + " boxes validate", all);
    out.verdict = all;
    return out;
}

// Axis-aligned chessboard packing of n unit squares in a side-m square.
inline PackingInstance trivial_packing(int n, int m) {
    if (n > m * m) throw CertError("trivial packing requires n <= m^2");
    PackingInstance p;
    p.side = Exact(m);
    p.regime = PackingRegime::UnitSquares;
    for (int k = 0; k < n; ++k) {
        int i = k % m, j = k / m;
        PackingInstance::Entry e;
        e.cx = Exact(i) + frac(1, 2);
        e.cy = Exact(j) + frac(1, 2);
        e.angle_deg = Exact(0);
        e.box_side = Exact(1);
        p.boxes.push_back(std::move(e));
    }
    return p;
}

inline nlohmann::json packing_to_json(const PackingInstance& p) {
    nlohmann::json j;
    j["container"]["side"] = p.side.str();
    j["regime"] = p.regime == PackingRegime::Boxes ? "boxes" : "unit";
    j["boxes"] = nlohmann::json::array();
    for (auto& e : p.boxes) {
        nlohmann::json b;
        b["cx"] = e.cx.str();
        b["cy"] = e.cy.str();
        b["angle_deg"] = e.angle_deg.str();
        b["side"] = e.box_side.str();
        j["boxes"].push_back(std::move(b));
    }
    return j;
}

} // namespace unav

#pragma once

// Static SVG rendering of configurations, certificates and midpoint-region
// analyses.  Output is deterministic.

#include <fstream>
#include <string>

#include "certificate.hpp"
#include "resource.hpp"

namespace unav {

class SvgWriter {
public:
    SvgWriter(double world, double pixels) : world_(world), scale_(pixels / world) {
        buf_ += "<?xml version=\"1.0\" standalone=\"no\"?>\n";
        buf_ += "<svg width=\"" + fmt(pixels) + "\" height=\"" + fmt(pixels) +
                "\" viewBox=\"0 0 " + fmt(pixels) + " " + fmt(pixels) +
                "\" version=\"1.1\" xmlns=\"http://www.w3.org/2000/svg\">\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0) {
        buf_ += "<line x1=\"" + fmt(sx(x1)) + "\" y1=\"" + fmt(sy(y1)) + "\" x2=\"" +
                fmt(sx(x2)) + "\" y2=\"" + fmt(sy(y2)) + "\" stroke=\"" + stroke +
                "\" stroke-width=\"" + fmt(width) + "\"/>\n";
    }

    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                 const std::string& fill) {
        buf_ += "<polygon points=\"";
        for (auto& [x, y] : pts) buf_ += fmt(sx(x)) + "," + fmt(sy(y)) + " ";
        buf_ += "\" stroke=\"" + stroke + "\" fill=\"" + fill + "\" stroke-width=\"0.8\"/>\n";
    }

    void circle(double x, double y, double r_world, const std::string& stroke,
                const std::string& fill) {
        buf_ += "<circle cx=\"" + fmt(sx(x)) + "\" cy=\"" + fmt(sy(y)) + "\" r=\"" +
                fmt(r_world * scale_) + "\" stroke=\"" + stroke + "\" fill=\"" + fill +
                "\"/>\n";
    }

    void dot(double x, double y, const std::string& color) {
        buf_ += "<circle cx=\"" + fmt(sx(x)) + "\" cy=\"" + fmt(sy(y)) +
                "\" r=\"4\" fill=\"" + color + "\"/>\n";
    }

    void save(const std::string& path) {
        std::ofstream out(path);
        out << buf_ << "</svg>\n";
    }

private:
    double world_, scale_;
    std::string buf_;
    double sx(double x) const { return x * scale_; }
    double sy(double y) const { return (world_ - y) * scale_; }  // y up

    static std::string fmt(double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.2f", v);
        return b;
    }
};

inline void render_cert_file(const CertFile& f, const std::string& path) {
    double m = f.config.side.to_interval().mid();
    SvgWriter svg(m, 720);
    svg.polygon({{0, 0}, {m, 0}, {m, m}, {0, m}}, "black", "none");
    for (auto& cert : f.certs) {
        for (auto& app : cert.apps) {
            std::vector<std::pair<double, double>> pts;
            for (auto& v : app.region) pts.push_back({v.x.approx(), v.y.approx()});
            svg.polygon(pts, "#888888", "none");
        }
    }
    for (auto& p : f.config.points) {
        std::string color = p.color == "red" ? "#cc2222"
                            : p.color == "blue" ? "#2244cc"
                                                : "#222222";
        svg.dot(p.pos.x.approx(), p.pos.y.approx(), color);
    }
    svg.save(path);
}

inline void render_midpoint_region(const MpRegion& reg, const EPt& target, double radius,
                                   double world, const std::string& path) {
    SvgWriter svg(world, 720);
    svg.polygon({{0, 0}, {world, 0}, {world, world}, {0, world}}, "black", "none");
    for (auto& c : reg.constraints) {
        switch (c.type) {
            case MpConstraint::Type::HalfPlaneXGE: {
                double x = c.x_min.to_interval().mid();
                svg.line(x, 0, x, world, "#888888");
                break;
            }
            case MpConstraint::Type::DiskIn:
            case MpConstraint::Type::DiskOut: {
                double r = std::sqrt(c.r2.to_interval().mid());
                svg.circle(c.center.x.approx(), c.center.y.approx(), r,
                           c.type == MpConstraint::Type::DiskIn ? "#2244cc" : "#22aa22",
                           "none");
                break;
            }
        }
    }
    for (auto& corner : reg.corners) {
        if (corner.feasible == Verdict::False) continue;
        svg.dot(corner.x.mid(), corner.y.mid(), "#cc2222");
    }
    svg.circle(target.x.approx(), target.y.approx(), radius, "#cc8800", "none");
    svg.save(path);
}

} // namespace unav

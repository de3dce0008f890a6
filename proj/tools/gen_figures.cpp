// Regenerates the shipped data files (figures/*.cert, packings/*.pack) from
// the lattice constructions.  The outputs are committed; this tool exists so
// they can be rebuilt and diffed.

#include <fstream>
#include <iostream>

#include "unav/lattice.hpp"
#include "unav/packing.hpp"

using namespace unav;

namespace {

// Rows of the 33-point configuration in [0,6]^2: the bottom row sits at
// y = sqrt(2)-1/2 with 5 points at x = 1..5; rows above alternate 6-point
// (x = 0.5..5.5) and 5-point rows at vertical spacing sqrt(3)/2.
Configuration fig1_config(const std::string& color, const std::string& prefix, bool mirrored) {
    Configuration cfg;
    cfg.side = Exact(6);
    Exact y0 = sqrt2() - frac(1, 2);
    Exact gap = Exact::sqrt_rational(3) * frac(1, 2);
    for (int r = 0; r < 6; ++r) {
        Exact y = y0 + Exact(r) * gap;
        if (mirrored) y = Exact(6) - y;
        int row_tag = mirrored ? 6 - r : r + 1;
        bool five = (r % 2 == 0);
        int n = five ? 5 : 6;
        for (int k = 0; k < n; ++k) {
            ConfigPoint p;
            Exact x = five ? Exact(k + 1) : frac(1, 2) + Exact(k);
            p.id = prefix + std::to_string(row_tag) + "_" + std::to_string(k + 1);
            p.pos = {x, y};
            p.color = color;
            p.row = row_tag;
            cfg.points.push_back(std::move(p));
        }
    }
    return cfg;
}

Configuration merge_configs(const Configuration& a, const Configuration& b) {
    Configuration out = a;
    for (auto& p : b.points) out.points.push_back(p);
    return out;
}

// The 45 grid points {0.5,1,...,4.5} x {0.9,1.7,2.5,3.3,4.1} in [0,5]^2.
// Odd rows carry blue on the half-integers and red on the integers; even
// rows swap, giving 22 red and 23 blue points.
Configuration fig3_config() {
    Configuration cfg;
    cfg.side = Exact(5);
    for (int r = 0; r < 5; ++r) {
        Exact y = frac(9, 10) + Exact(r) * frac(8, 10);
        bool halves_blue = (r % 2 == 0);
        for (int k = 0; k < 9; ++k) {
            Exact x = frac(1, 2) + Exact(k) * frac(1, 2);
            bool half_pos = (k % 2 == 0);
            std::string color = (half_pos == halves_blue) ? "blue" : "red";
            ConfigPoint p;
            p.pos = {x, y};
            p.color = color;
            p.row = r + 1;
            cfg.points.push_back(std::move(p));
        }
    }
    // ids per color counted along rows
    std::map<std::string, std::map<int, int>> counters;
    for (auto& p : cfg.points) {
        int k = ++counters[p.color][p.row];
        p.id = (p.color == "red" ? "r" : "b") + std::to_string(p.row) + "_" + std::to_string(k);
    }
    return cfg;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    out << j.dump(1) << "\n";
    std::cout << "wrote " << path << "\n";
}

} // namespace

int main() {
    // Figure 1: one 33-point unavoidable set
    {
        Configuration cfg = fig1_config("black", "p", false);
        CertFile f;
        f.config = cfg;
        f.certs.push_back(build_lattice_certificate(cfg, "black"));
        write_json("figures/fig1.cert", cert_file_to_json(f));
    }
    // Figure 2: red = the Figure 1 points, blue = mirrored across y = 3
    {
        Configuration red = fig1_config("red", "r", false);
        Configuration blue = fig1_config("blue", "b", true);
        Configuration both = merge_configs(red, blue);
        CertFile fr;
        fr.config = both;
        fr.certs.push_back(build_lattice_certificate(both, "red"));
        write_json("figures/fig2_red.cert", cert_file_to_json(fr));
        CertFile fb;
        fb.config = both;
        fb.certs.push_back(build_lattice_certificate(both, "blue"));
        write_json("figures/fig2_blue.cert", cert_file_to_json(fb));
    }
    // Figure 3: 22 red + 23 blue on the 9x5 grid, both certificates in one file
    {
        Configuration cfg = fig3_config();
        CertFile f;
        f.config = cfg;
        f.certs.push_back(build_lattice_certificate(cfg, "red"));
        f.certs.push_back(build_lattice_certificate(cfg, "blue"));
        write_json("figures/fig3.cert", cert_file_to_json(f));
    }
    // Trivial packings
    write_json("packings/trivial_22_5.pack", packing_to_json(trivial_packing(22, 5)));
    write_json("packings/trivial_33_6.pack", packing_to_json(trivial_packing(33, 6)));
    return 0;
}

// Command-line front end.
//
// Exit codes: 0 = certified true, 1 = certified false, 2 = indeterminate,
// 3 = parse / usage errors.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "unav/proofs.hpp"
#include "unav/svg.hpp"

using namespace unav;

namespace {

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::True: return 0;
        case Verdict::False: return 1;
        default: return 2;
    }
}

void print_report(const Report& rep, const std::string& format) {
    if (format == "structured") std::cout << rep.render_json();
    else std::cout << rep.render_text();
}

Mutations parse_mutations(const std::vector<std::string>& kvs) {
    Mutations mut;
    for (auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("--mutate expects key=value: " + kv);
        mut.kv[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return mut;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unavoidable: machine-checked square-packing lower bounds"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "report format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));

    // verify
    auto* verify = app.add_subcommand("verify", "verify an unavoidable-set certificate file");
    std::string verify_path;
    verify->add_option("file", verify_path, "certificate file")->required();

    // prove
    auto* prove = app.add_subcommand("prove", "run a proof script end to end");
    std::string prove_path;
    std::vector<std::string> mutate_kv;
    prove->add_option("file", prove_path, "proof script")->required();
    prove->add_option("--mutate", mutate_kv,
                      "perturb a named quantity (line-capacity, line-x, shift, slide-to, row-dy)");

    // falsify
    auto* fals = app.add_subcommand("falsify",
                                    "grid-search a certificate's configuration for an empty box");
    std::string fals_path, fals_color = "";
    double fals_step = 0.02, fals_angle = 1.0;
    fals->add_option("file", fals_path, "certificate file")->required();
    fals->add_option("--color", fals_color, "point color (defaults to the first certificate)");
    fals->add_option("--step", fals_step, "centre grid step (default 0.02)");
    fals->add_option("--angle-step", fals_angle, "angle step in degrees (default 1)");

    // check-packing
    auto* pack = app.add_subcommand("check-packing", "validate a packing file");
    std::string pack_path;
    pack->add_option("file", pack_path, "packing file")->required();

    // fcurve
    auto* fcv = app.add_subcommand("fcurve", "evaluate the certified f(a) minimum");
    std::string fcv_a;
    fcv->add_option("--a", fcv_a, "value of a (constant expression)")->required();

    // render
    auto* render = app.add_subcommand("render", "render a data file to SVG");
    std::string render_path, render_svg = "out.svg";
    int render_case = 0;
    render->add_option("file", render_path, "certificate or proof script")->required();
    render->add_option("--svg", render_svg, "output SVG path");
    render->add_option("--case", render_case,
                       "for proof scripts: render the midpoint region of case 1 or 2");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "print the known-bounds table");
    bool bounds_proved = false;
    bounds->add_flag("--with-proofs", bounds_proved,
                     "render the table with the s(22), s(33) results applied");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (*verify) {
            CertFile f = load_cert_file(verify_path);
            Verdict all = Verdict::True;
            for (auto& cert : f.certs) {
                VerifyResult vr = verify_certificate(cert);
                std::printf("certificate %s (%s): %s\n", verify_path.c_str(),
                            cert.color.c_str(), to_string(vr.verdict));
                print_report(vr.report, format);
                if (vr.verdict == Verdict::True) {
                    BoundRecord b = count_bound(cert, vr);
                    std::printf("conclusion: at most %d boxes; %s\n", b.t, b.claim.c_str());
                }
                all = all && vr.verdict;
            }
            return verdict_exit(all);
        }
        if (*prove) {
            ProofRunner runner(".");
            ProofResult r = runner.run_file(prove_path, parse_mutations(mutate_kv));
            print_report(r.report, format);
            std::printf("proof %s: %s", prove_path.c_str(), to_string(r.verdict));
            if (r.verdict == Verdict::True) std::printf("  [%s]", r.conclusion.c_str());
            std::printf("\n");
            if (r.verdict == Verdict::True) {
                std::printf("%s", render_bounds_table(true).c_str());
            }
            return verdict_exit(r.verdict);
        }
        if (*fals) {
            CertFile f = load_cert_file(fals_path);
            std::string color = fals_color.empty() ? f.certs.at(0).color : fals_color;
            FalsifyOptions opt;
            opt.step = fals_step;
            opt.angle_step_deg = fals_angle;
            FalsificationResult r = falsify(f.config, color, opt);
            if (r.found) {
                std::printf("found an empty box: centre (%.6f, %.6f) angle %.2f deg side %.4f\n",
                            r.cx, r.cy, r.angle, r.side);
                std::printf("the configuration (%s) is NOT unavoidable\n", color.c_str());
                return 0;
            }
            std::printf("no empty box found over %ld cells; %s\n", r.cells,
                        r.disclaimer.c_str());
            return 0;
        }
        if (*pack) {
            PackingInstance p = load_packing_file(pack_path);
            PackingReport r = validate_packing(p);
            print_report(r.report, format);
            std::printf("packing %s: %s\n", pack_path.c_str(), to_string(r.verdict));
            return verdict_exit(r.verdict);
        }
        if (*fcv) {
            Exact a = parse_constant(fcv_a);
            FCurvePoint fp = eval_f(a);
            std::printf("f(%s) in [%.17g, %.17g]\n", fcv_a.c_str(), fp.f_value.lo,
                        fp.f_value.hi);
            std::printf("theta* in [%.17g, %.17g], cos theta* in [%.17g, %.17g]\n",
                        fp.theta_star.lo, fp.theta_star.hi, fp.cos_theta_star.lo,
                        fp.cos_theta_star.hi);
            std::printf("cubic residual in [%.3g, %.3g]\n", fp.cubic_residual.lo,
                        fp.cubic_residual.hi);
            return 0;
        }
        if (*render) {
            if (render_case > 0) {
                // midpoint-region figures from a proof script's case analysis
                std::ifstream in(render_path);
                if (!in) throw CertError("cannot open " + render_path);
                nlohmann::json j;
                in >> j;
                Exact line_x = parse_constant(j.at("resource").at("line_x").get<std::string>());
                const nlohmann::json* found = nullptr;
                int seen = 0;
                for (auto& cj : j.at("cases"))
                    if (cj.contains("midpoint") && ++seen == render_case) found = &cj;
                if (!found) throw CertError("no case with a midpoint analysis at that index");
                const auto& mj = found->at("midpoint");
                std::vector<MpConstraint> cs;
                MpConstraint hp;
                hp.type = MpConstraint::Type::HalfPlaneXGE;
                hp.x_min = line_x + (sqrt2() - Exact(1)) * frac(1, 2);
                cs.push_back(hp);
                for (auto& dj : mj.at("denied_used")) {
                    MpConstraint d;
                    d.type = MpConstraint::Type::DiskOut;
                    d.center = {parse_constant(dj[0].get<std::string>()),
                                parse_constant(dj[1].get<std::string>())};
                    d.r2 = frac(1, 4);
                    cs.push_back(d);
                }
                MpConstraint din;
                din.type = MpConstraint::Type::DiskIn;
                din.center = {parse_constant(mj.at("covered")[0].get<std::string>()),
                              parse_constant(mj.at("covered")[1].get<std::string>())};
                din.r2 = frac(101, 200) * frac(101, 200) * Exact(2);
                cs.push_back(din);
                MpRegion reg = feasible_midpoint_region(cs);
                EPt target{parse_constant(mj.at("target")[0].get<std::string>()),
                           parse_constant(mj.at("target")[1].get<std::string>())};
                double world = parse_constant(j.at("container").get<std::string>()).approx();
                render_midpoint_region(reg, target, 0.5, world, render_svg);
            } else {
                CertFile f = load_cert_file(render_path);
                render_cert_file(f, render_svg);
            }
            std::printf("wrote %s\n", render_svg.c_str());
            return 0;
        }
        if (*bounds) {
            std::printf("%s", render_bounds_table(bounds_proved).c_str());
            return 0;
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 3;
    } catch (const CertError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 3;
}

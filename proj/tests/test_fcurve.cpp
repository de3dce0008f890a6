#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "unav/fcurve.hpp"
#include "unav/symbolic.hpp"

using namespace unav;

namespace {

// Independent oracle: dense grid minimization of the theta form
//   cos t/(1+cos t) + (1 - a cos t)/sin t   over (0, pi/4],
// refined around the best sample.  With 1e7 samples and two refinement
// passes the result is far inside 1e-9 of the true minimum (the curvature
// at the minimum is O(1), so the quadratic error at step h is ~h^2).
double oracle_min(double a) {
    auto g = [a](double t) {
        double c = std::cos(t), s = std::sin(t);
        return c / (1.0 + c) + (1.0 - a * c) / s;
    };
    const double pi4 = std::acos(-1.0) / 4.0;
    double lo = 1e-4, hi = pi4;
    double best = 1e18, bt = lo;
    for (int pass = 0; pass < 3; ++pass) {
        int n = pass == 0 ? 10000000 : 100000;
        double step = (hi - lo) / n;
        best = 1e18;
        for (int i = 0; i <= n; ++i) {
            double t = lo + i * step;
            if (t > pi4) t = pi4;
            double v = g(t);
            if (v < best) { best = v; bt = t; }
        }
        lo = std::max(1e-4, bt - 2 * step);
        hi = std::min(pi4, bt + 2 * step);
    }
    return best;
}

} // namespace

TEST_CASE("eval_f agrees with the grid oracle within 1e-9") {
    const char* cases[] = {"0.83", "0.85", "sqrt(3)/2", "0.9", "0.95"};
    for (const char* expr : cases) {
        Exact a = parse_constant(expr);
        FCurvePoint fp = eval_f(a);
        double oracle = oracle_min(a.approx());
        INFO("a = " << expr << " oracle = " << oracle << " f = [" << fp.f_value.lo << ", "
                    << fp.f_value.hi << "]");
        CHECK(fp.f_value.width() < 1e-9);
        CHECK(std::abs(fp.f_value.mid() - oracle) < 1e-9);
        CHECK(fp.cubic_residual.lo > -1e-9);
        CHECK(fp.cubic_residual.hi < 1e-9);
        CHECK(fp.theta_star.lo > 0.0);
        CHECK(fp.theta_star.hi <= 0.7853981634);
    }
}

TEST_CASE("f(sqrt(3)/2) certifiably exceeds 1/2") {
    FCurvePoint fp = eval_f(parse_constant("sqrt(3)/2"));
    CHECK(fp.f_value.lo > 0.5);
}

TEST_CASE("minimum is at most the endpoint value at theta = pi/4") {
    FCurvePoint fp = eval_f(parse_constant("0.95"));
    double a = 0.95;
    double c = std::sqrt(0.5);
    double endpoint = c / (1 + c) + (1 - a * c) / c;
    CHECK(fp.f_value.hi < endpoint);
}

TEST_CASE("precondition violations are errors") {
    CHECK_THROWS_AS(eval_f(parse_constant("0.5")), FCurveError);
    CHECK_THROWS_AS(eval_f(parse_constant("1")), FCurveError);
    // 2*sqrt(2)-2 itself is excluded
    CHECK_THROWS_AS(eval_f(parse_constant("2*sqrt(2)-2")), FCurveError);
}

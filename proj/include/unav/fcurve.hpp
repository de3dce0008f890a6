#pragma once

// The f(a) curve: for 2*sqrt(2)-2 < a < 1, f(a) is the minimum over
// theta in (0, pi/4] of
//
//     g(theta) = cos(theta)/(1+cos(theta)) + (1 - a*cos(theta))/sin(theta).
//
// In terms of c = cos(theta) on [sqrt(2)/2, 1):
//
//     g(c) = c/(1+c) + (1 - a*c)/sqrt(1-c^2),
//
// and the interior critical point is the root of
//
//     2c^3 - (2a+2)c^2 + (a^2-2a+3)c - (1-a^2) = 0
//
// equivalently (a-c)^2 (1+c) = (1-c)^3 with c < a.  The root is located by
// exact bisection; minimality is certified independently by interval
// branch-and-bound over the whole c range, so the value does not rest on an
// unimodality assumption.

#include <queue>
#include <vector>

#include "exact.hpp"
#include "interval.hpp"

namespace unav {

struct FCurvePoint {
    Interval a;
    Interval theta_star;
    Interval cos_theta_star;
    Interval f_value;        // certified enclosure of min g
    Interval cubic_residual; // cubic evaluated over the root enclosure
};

struct FCurveError : std::runtime_error {
    explicit FCurveError(const std::string& w) : std::runtime_error(w) {}
};

namespace detail {

inline Exact fcurve_cubic(const Exact& a, const Exact& c) {
    Exact two(2);
    return two * c * c * c - (two * a + two) * c * c + (a * a - two * a + Exact(3)) * c -
           (Exact(1) - a * a);
}

// Interval evaluation of g on a c-cell strictly inside [x, 1).
inline Interval fcurve_g(const Interval& a, const Interval& c) {
    Interval one = Interval::exact(1.0);
    Interval first = c / (one + c);
    Interval s2 = one - sqr(c);
    Interval second = (one - a * c) / sqrt(s2);
    return first + second;
}

// g'(c) = 1/(1+c)^2 + (c - a)/(1-c^2)^(3/2)
inline Interval fcurve_g_deriv(const Interval& a, const Interval& c) {
    Interval one = Interval::exact(1.0);
    Interval first = one / sqr(one + c);
    Interval s2 = one - sqr(c);
    Interval pow32 = s2 * sqrt(s2);
    return first + (c - a) / pow32;
}

// Lower bound of g on [l, h] via the centered form
//   g(c) >= g(m) - |g'([l,h])| * (h - l)/2,
// which decays quadratically near the critical point where the naive
// interval evaluation only decays linearly.
inline double fcurve_cell_lower(const Interval& a, double l, double h) {
    Interval cell(l, h);
    Interval naive = fcurve_g(a, cell);
    Interval m = Interval::exact(0.5 * (l + h));
    Interval gm = fcurve_g(a, m);
    Interval dg = fcurve_g_deriv(a, cell);
    Interval radius = Interval::exact(0.5) * (Interval::exact(h) - Interval::exact(l));
    Interval centered = gm + dg * Interval(-radius.hi, radius.hi);
    return std::max(naive.lo, centered.lo);
}

} // namespace detail

// Certified evaluation of f(a) for exact a with 2*sqrt(2)-2 < a < 1.
// tol bounds the width of the returned f enclosure.
inline FCurvePoint eval_f(const Exact& a, double tol = 1e-10) {
    Exact lo_bound = Exact(2) * sqrt2() - Exact(2);
    if (!(a > lo_bound && a < Exact(1)))
        throw FCurveError("eval_f requires 2*sqrt(2)-2 < a < 1");

    // --- exact bisection of the cubic on (sqrt(2)/2, a)
    Exact clo = Exact::surd(mpq_class(1, 2), 2);  // sqrt(2)/2
    Exact chi = a;
    if (detail::fcurve_cubic(a, clo).sign() <= 0)
        throw FCurveError("no certified critical point: cubic sign at left end");
    if (detail::fcurve_cubic(a, chi).sign() >= 0)
        throw FCurveError("no certified critical point: cubic sign at right end");
    for (int it = 0; it < 60; ++it) {
        Exact mid = (clo + chi) * frac(1, 2);
        int s = detail::fcurve_cubic(a, mid).sign();
        if (s == 0) { clo = mid; chi = mid; break; }
        if (s > 0) clo = mid;
        else chi = mid;
    }
    Interval c_star = hull(clo.to_interval(), chi.to_interval());
    Interval residual =
        hull(detail::fcurve_cubic(a, clo).to_interval(), detail::fcurve_cubic(a, chi).to_interval());

    // --- theta* from cos(theta*) = c* by monotone bisection.  Invariants:
    // cos(tlo) >= c*.hi (tlo left of theta*) and cos(thi) <= c*.lo.
    double tlo = 0.0, thi = 0.79;  // cos(0.79) < sqrt(2)/2 <= c*
    if (!(cos(Interval::exact(thi)).hi <= c_star.lo))
        throw FCurveError("failed to bracket theta*");
    for (int it = 0; it < 64; ++it) {
        double tm = 0.5 * (tlo + thi);
        Interval cm = cos(Interval::exact(tm));
        if (cm.lo >= c_star.hi) tlo = tm;
        else if (cm.hi <= c_star.lo) thi = tm;
        else break;  // tm within the c* enclosure; [tlo, thi] stays certified
    }
    Interval theta_star(tlo, thi);

    Interval ai = a.to_interval();

    // Upper bound for f from the critical point.
    Interval f_up = detail::fcurve_g(ai, c_star);

    // --- global lower bound by branch-and-bound over c in [sqrt(2)/2, 1)
    struct Cell {
        double lo, hi, glo;
        bool operator<(const Cell& o) const { return glo > o.glo; }  // min-heap
    };
    double cleft = Exact::surd(mpq_class(1, 2), 2).to_interval().lo;
    auto cell_lower = [&](double l, double h) -> double {
        if (h >= 1.0) {
            // g >= (1 - a*c)/sqrt(1-c^2) >= (1 - a.hi)/sqrt(1 - l^2)
            Interval denom = sqrt(Interval::exact(1.0) - sqr(Interval::exact(l)));
            Interval bound = (Interval::exact(1.0) - ai) / denom;
            return bound.lo;
        }
        return detail::fcurve_cell_lower(ai, l, h);
    };
    std::priority_queue<Cell> heap;
    auto push = [&](double l, double h) { heap.push({l, h, cell_lower(l, h)}); };
    push(cleft, 0.9);
    push(0.9, 0.99);
    push(0.99, 1.0);
    double fup = f_up.hi;
    double glob_lo = -1e300;
    int iter = 0;
    for (;;) {
        if (heap.empty()) throw FCurveError("branch-and-bound exhausted all cells");
        Cell top = heap.top();
        if (top.glo >= fup - tol) {
            glob_lo = top.glo;
            break;
        }
        heap.pop();
        if (++iter > 500000) throw FCurveError("minimality certification did not converge");
        double m = 0.5 * (top.lo + top.hi);
        if (!(m > top.lo && m < top.hi))
            throw FCurveError("cell width underflow in branch-and-bound");
        // Midpoint evaluation sharpens the upper bound.
        Interval gm = detail::fcurve_g(ai, Interval::exact(m));
        if (gm.hi < fup) fup = gm.hi;
        push(top.lo, m);
        push(m, top.hi);
    }

    FCurvePoint out;
    out.a = ai;
    out.theta_star = theta_star;
    out.cos_theta_star = c_star;
    out.f_value = Interval(std::min(glob_lo, fup), fup);
    out.cubic_residual = residual;
    return out;
}

} // namespace unav

#pragma once

// Outward-rounded interval arithmetic on double endpoints.
//
// Every operation returns an interval that contains the exact real result
// for all inputs contained in the operand intervals.  Rounding is handled
// by nudging endpoints one ulp outward after each native operation, which
// is sound under the default round-to-nearest mode (error < 1 ulp).

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <algorithm>

namespace unav {

enum class Verdict { True, False, Indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        default: return "indeterminate";
    }
}

inline Verdict operator&&(Verdict a, Verdict b) {
    if (a == Verdict::False || b == Verdict::False) return Verdict::False;
    if (a == Verdict::True && b == Verdict::True) return Verdict::True;
    return Verdict::Indeterminate;
}

struct IntervalError : std::domain_error {
    explicit IntervalError(const std::string& what) : std::domain_error(what) {}
};

inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}
inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

namespace rnd {

// Directed-rounding primitives.  The rounding error of +,-,* under
// round-to-nearest is itself representable (TwoSum / fma residual), so the
// endpoint is only nudged when the native result is inexact.
inline double add_down(double a, double b) {
    double s = a + b;
    double bp = s - a, ap = s - bp;
    double err = (a - ap) + (b - bp);
    return err < 0 ? next_down(s) : s;
}
inline double add_up(double a, double b) {
    double s = a + b;
    double bp = s - a, ap = s - bp;
    double err = (a - ap) + (b - bp);
    return err > 0 ? next_up(s) : s;
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }
inline double mul_down(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return err < 0 ? next_down(p) : p;
}
inline double mul_up(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return err > 0 ? next_up(p) : p;
}
inline double div_down(double a, double b) {
    double q = a / b;
    double nr = std::fma(q, b, -a);  // q*b - a; true quotient is q - nr/b
    if (nr != 0 && ((nr > 0) == (b > 0))) return next_down(q);
    return q;
}
inline double div_up(double a, double b) {
    double q = a / b;
    double nr = std::fma(q, b, -a);
    if (nr != 0 && ((nr > 0) != (b > 0))) return next_up(q);
    return q;
}

} // namespace rnd

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw IntervalError("invalid interval endpoints");
    }

    static Interval exact(double x) { return Interval(x, x); }
    // Encloses x, widened one ulp each way.  For values produced by an
    // external rounded computation (library functions, decimal parsing).
    static Interval around(double x) { return Interval(next_down(x), next_up(x)); }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(rnd::add_down(a.lo, b.lo), rnd::add_up(a.hi, b.hi));
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(rnd::sub_down(a.lo, b.hi), rnd::sub_up(a.hi, b.lo));
}
inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator*(const Interval& a, const Interval& b) {
    double lo = std::min(std::min(rnd::mul_down(a.lo, b.lo), rnd::mul_down(a.lo, b.hi)),
                         std::min(rnd::mul_down(a.hi, b.lo), rnd::mul_down(a.hi, b.hi)));
    double hi = std::max(std::max(rnd::mul_up(a.lo, b.lo), rnd::mul_up(a.lo, b.hi)),
                         std::max(rnd::mul_up(a.hi, b.lo), rnd::mul_up(a.hi, b.hi)));
    return Interval(lo, hi);
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero())
        throw IntervalError("interval division by an interval containing zero");
    double lo = std::min(std::min(rnd::div_down(a.lo, b.lo), rnd::div_down(a.lo, b.hi)),
                         std::min(rnd::div_down(a.hi, b.lo), rnd::div_down(a.hi, b.hi)));
    double hi = std::max(std::max(rnd::div_up(a.lo, b.lo), rnd::div_up(a.lo, b.hi)),
                         std::max(rnd::div_up(a.hi, b.lo), rnd::div_up(a.hi, b.hi)));
    return Interval(lo, hi);
}

inline Interval sqr(const Interval& a) {
    if (a.lo >= 0.0) return Interval(rnd::mul_down(a.lo, a.lo), rnd::mul_up(a.hi, a.hi));
    if (a.hi <= 0.0) return Interval(rnd::mul_down(a.hi, a.hi), rnd::mul_up(a.lo, a.lo));
    double m = std::max(rnd::mul_up(a.lo, a.lo), rnd::mul_up(a.hi, a.hi));
    return Interval(0.0, m);
}

namespace rnd {

inline double sqrt_down(double x) {
    double r = std::sqrt(x);
    double nr = std::fma(r, r, -x);  // r^2 - x
    return nr > 0 ? next_down(r) : r;
}
inline double sqrt_up(double x) {
    double r = std::sqrt(x);
    double nr = std::fma(r, r, -x);
    return nr < 0 ? next_up(r) : r;
}

} // namespace rnd

// sqrt clamps a slightly-negative lower endpoint to zero; an interval that is
// entirely negative is an error, never silently absorbed.
inline Interval sqrt(const Interval& a) {
    if (a.hi < 0.0) throw IntervalError("interval sqrt of a negative interval");
    double lo = a.lo <= 0.0 ? 0.0 : std::max(0.0, rnd::sqrt_down(a.lo));
    double hi = rnd::sqrt_up(a.hi);
    return Interval(lo, hi);
}

inline Interval abs(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return Interval(0.0, std::max(-a.lo, a.hi));
}

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}
inline Interval min(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}
inline Interval max(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

// pi with certified bounds (0x1.921fb54442d18p+1 is the nearest double below pi).
inline Interval pi() { return Interval(0x1.921fb54442d18p+1, 0x1.921fb54442d19p+1); }

enum class Rel { LT, GT, LE, GE };

// Strict three-valued comparison: True only when the relation holds for every
// pair of contained reals, False only when its negation does.
inline Verdict cmp(const Interval& a, const Interval& b, Rel r) {
    switch (r) {
        case Rel::LT:
            if (a.hi < b.lo) return Verdict::True;
            if (a.lo >= b.hi) return Verdict::False;
            return Verdict::Indeterminate;
        case Rel::GT:
            if (a.lo > b.hi) return Verdict::True;
            if (a.hi <= b.lo) return Verdict::False;
            return Verdict::Indeterminate;
        case Rel::LE:
            if (a.hi <= b.lo) return Verdict::True;
            if (a.lo > b.hi) return Verdict::False;
            return Verdict::Indeterminate;
        case Rel::GE:
            if (a.lo >= b.hi) return Verdict::True;
            if (a.hi < b.lo) return Verdict::False;
            return Verdict::Indeterminate;
    }
    return Verdict::Indeterminate;
}

namespace detail {

// cos/sin on [0, 1.6] by alternating Taylor series with the first omitted
// term as a rigorous remainder bound.  12 terms keep the truncation error
// below 1.4e-19 at x = 1.6.
inline Interval cos_kernel(const Interval& x) {
    Interval x2 = sqr(x);
    Interval sum = Interval::exact(1.0);
    Interval term = Interval::exact(1.0);
    for (int k = 1; k < 12; ++k) {
        term = term * x2 / Interval::exact(double(2 * k - 1) * double(2 * k));
        sum = (k % 2) ? sum - term : sum + term;
    }
    Interval rem = term * x2 / Interval::exact(23.0 * 24.0);
    double r = std::max(std::abs(rem.lo), std::abs(rem.hi));
    return Interval(rnd::sub_down(sum.lo, r), rnd::add_up(sum.hi, r));
}

inline Interval sin_kernel(const Interval& x) {
    Interval x2 = sqr(x);
    Interval sum = x;
    Interval term = x;
    for (int k = 1; k < 12; ++k) {
        term = term * x2 / Interval::exact(double(2 * k) * double(2 * k + 1));
        sum = (k % 2) ? sum - term : sum + term;
    }
    Interval rem = term * x2 / Interval::exact(24.0 * 25.0);
    double r = std::max(std::abs(rem.lo), std::abs(rem.hi));
    return Interval(rnd::sub_down(sum.lo, r), rnd::add_up(sum.hi, r));
}

} // namespace detail

// cos over an angle interval within [0, 1.6) (covers [0, pi/2] with slack),
// using monotone decrease of cos on [0, pi].
inline Interval cos(const Interval& th) {
    if (th.lo < 0.0 || th.hi >= 1.6)
        throw IntervalError("cos argument outside supported range [0, 1.6)");
    Interval at_lo = detail::cos_kernel(Interval::exact(th.lo));
    Interval at_hi = detail::cos_kernel(Interval::exact(th.hi));
    return Interval(std::max(-1.0, at_hi.lo), std::min(1.0, at_lo.hi));
}

// sin over an angle interval within [0, 1.5708...] (monotone increase).
inline Interval sin(const Interval& th) {
    if (th.lo < 0.0 || th.hi > 0x1.921fb54442d18p+0 /* <= pi/2 */)
        throw IntervalError("sin argument outside supported range [0, pi/2]");
    Interval at_lo = detail::sin_kernel(Interval::exact(th.lo));
    Interval at_hi = detail::sin_kernel(Interval::exact(th.hi));
    return Interval(std::max(0.0, at_lo.lo), std::min(1.0, at_hi.hi));
}

} // namespace unav

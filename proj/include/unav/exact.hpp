#pragma once

// Exact arithmetic in the field Q(sqrt(d1), sqrt(d2), ...): finite sums
// c_1*sqrt(d_1) + ... with rational coefficients and squarefree radicands.
// Closed under +, -, *, / and equipped with an exact sign, which is what
// lets boundary-equality hypotheses (a + 2b = 2*sqrt(2), unit side lengths,
// distances exactly 1) be decided instead of reported indeterminate.
//
// sqrt() is only available for rational operands; that is all the constant
// grammar admits and keeps the representation closed.

#include <gmpxx.h>
#include <map>
#include <vector>
#include <stdexcept>
#include <string>
#include <cstdint>

#include "interval.hpp"

namespace unav {

struct ExactError : std::domain_error {
    explicit ExactError(const std::string& what) : std::domain_error(what) {}
};

class Exact {
public:
    Exact() = default;
    Exact(long n) { if (n != 0) terms_[1] = mpq_class(n); }
    explicit Exact(const mpq_class& q) { if (q != 0) terms_[1] = q; }

    static Exact surd(const mpq_class& coeff, unsigned long radicand) {
        Exact e;
        if (coeff != 0) e.terms_[radicand] = coeff;
        return e;
    }

    // sqrt of a nonnegative rational: factor out the square part, keep the
    // squarefree remainder as a radicand.
    static Exact sqrt_rational(const mpq_class& r);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }
    mpq_class rational() const {
        if (terms_.empty()) return mpq_class(0);
        if (!is_rational()) throw ExactError("value is not rational");
        return terms_.begin()->second;
    }

    Exact operator-() const {
        Exact r;
        for (auto& [d, c] : terms_) r.terms_[d] = -c;
        return r;
    }

    friend Exact operator+(const Exact& a, const Exact& b) {
        Exact r = a;
        for (auto& [d, c] : b.terms_) {
            auto it = r.terms_.find(d);
            if (it == r.terms_.end()) r.terms_[d] = c;
            else {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }
    friend Exact operator-(const Exact& a, const Exact& b) { return a + (-b); }

    friend Exact operator*(const Exact& a, const Exact& b) {
        Exact r;
        for (auto& [da, ca] : a.terms_)
            for (auto& [db, cb] : b.terms_) {
                unsigned long g = gcd_ul(da, db);
                unsigned long d = (da / g) * (db / g);
                mpq_class c = ca * cb * (long)g;
                auto it = r.terms_.find(d);
                if (it == r.terms_.end()) {
                    if (c != 0) r.terms_[d] = c;
                } else {
                    it->second += c;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        return r;
    }

    friend Exact operator/(const Exact& a, const Exact& b) { return a * b.inverse(); }

    Exact inverse() const;

    // Exact sign: -1, 0, +1.  Fast interval screen first, then the recursive
    // conjugation argument (split off one surd prime, compare squares).
    int sign() const;

    friend bool operator==(const Exact& a, const Exact& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }
    friend bool operator<(const Exact& a, const Exact& b) { return (a - b).sign() < 0; }
    friend bool operator<=(const Exact& a, const Exact& b) { return (a - b).sign() <= 0; }
    friend bool operator>(const Exact& a, const Exact& b) { return (a - b).sign() > 0; }
    friend bool operator>=(const Exact& a, const Exact& b) { return (a - b).sign() >= 0; }

    Interval to_interval() const;

    double approx() const { return to_interval().mid(); }

    const std::map<unsigned long, mpq_class>& terms() const { return terms_; }

    std::string str() const;

private:
    // radicand (squarefree, 1 = rational part) -> coefficient
    std::map<unsigned long, mpq_class> terms_;

    static unsigned long gcd_ul(unsigned long a, unsigned long b) {
        while (b) { unsigned long t = a % b; a = b; b = t; }
        return a;
    }

    int sign_exact() const;
};

inline Exact Exact::sqrt_rational(const mpq_class& r) {
    if (r < 0) throw ExactError("sqrt of a negative rational");
    if (r == 0) return Exact();
    // sqrt(n/d) = sqrt(n*d)/d
    mpz_class m = r.get_num() * r.get_den();
    mpz_class square_part = 1, free_part = 1;
    mpz_class rest = m;
    for (unsigned long p = 2; mpz_class(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
        int cnt = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++cnt;
        }
        for (int i = 0; i < cnt / 2; ++i) square_part *= p;
        if (cnt % 2) free_part *= p;
        if (p > 1000000) throw ExactError("radicand too large to factor");
    }
    if (rest > 1) {
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), rest.get_mpz_t());
            square_part *= s;
        } else {
            free_part *= rest;
        }
    }
    if (!free_part.fits_ulong_p()) throw ExactError("radicand too large");
    mpq_class coeff(square_part, r.get_den());
    coeff.canonicalize();
    unsigned long d = free_part.get_ui();
    if (d == 1) return Exact(coeff);
    return surd(coeff, d);
}

inline Exact Exact::inverse() const {
    if (terms_.empty()) throw ExactError("division by zero");
    if (is_rational()) {
        mpq_class q = terms_.begin()->second;
        return Exact(mpq_class(1) / q);
    }
    // Pick a prime p dividing some radicand; write x = u + sqrt(p)*v with u, v
    // free of p, then 1/x = (u - sqrt(p)*v) / (u^2 - p*v^2).
    unsigned long p = 0;
    for (auto& [d, c] : terms_)
        if (d > 1) {
            unsigned long dd = d;
            for (unsigned long q = 2; q * q <= dd; ++q)
                if (dd % q == 0) { p = q; break; }
            if (p == 0) p = dd;
            break;
        }
    Exact u, v;
    for (auto& [d, c] : terms_) {
        if (d % p == 0) v.terms_[d / p] = c;
        else u.terms_[d] = c;
    }
    Exact sp = surd(1, p);
    Exact denom = u * u - Exact((long)p) * v * v;
    return (u - sp * v) * denom.inverse();
}

inline int Exact::sign() const {
    if (terms_.empty()) return 0;
    Interval iv = to_interval();
    if (iv.lo > 0.0) return 1;
    if (iv.hi < 0.0) return -1;
    return sign_exact();
}

inline int Exact::sign_exact() const {
    if (terms_.empty()) return 0;
    if (is_rational()) return sgn(terms_.begin()->second);
    unsigned long p = 0;
    for (auto& [d, c] : terms_)
        if (d > 1) {
            unsigned long dd = d;
            for (unsigned long q = 2; q * q <= dd; ++q)
                if (dd % q == 0) { p = q; break; }
            if (p == 0) p = dd;
            break;
        }
    Exact u, v;
    for (auto& [d, c] : terms_) {
        if (d % p == 0) v.terms_[d / p] = c;
        else u.terms_[d] = c;
    }
    int su = u.sign_exact(), sv = v.sign_exact();
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // Opposite signs: compare u^2 against p*v^2.
    Exact diff = u * u - Exact((long)p) * v * v;
    int t = diff.sign_exact();
    if (t == 0) throw ExactError("inconsistent surd representation");
    return t > 0 ? su : sv;
}

inline Interval Exact::to_interval() const {
    Interval acc = Interval::exact(0.0);
    for (auto& [d, c] : terms_) {
        double approx = c.get_d();
        Interval ci = (mpq_class(approx) == c) ? Interval::exact(approx)
                                               : Interval::around(approx);
        if (d == 1) {
            acc = acc + ci;
        } else {
            Interval root = sqrt(Interval::exact(double(d)));
            acc = acc + ci * root;
        }
    }
    return acc;
}

inline std::string Exact::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [d, c] : terms_) {
        std::string coeff = c.get_str();
        if (!first && coeff[0] != '-') out += "+";
        if (d == 1) out += coeff;
        else {
            if (coeff == "1") out += "sqrt(" + std::to_string(d) + ")";
            else if (coeff == "-1") out += "-sqrt(" + std::to_string(d) + ")";
            else out += coeff + "*sqrt(" + std::to_string(d) + ")";
        }
        first = false;
    }
    return out;
}

// Common constants.
inline const Exact& sqrt2() { static const Exact v = Exact::surd(1, 2); return v; }
inline const Exact& sqrt3() { static const Exact v = Exact::surd(1, 3); return v; }
inline Exact frac(long n, long d) { return Exact(mpq_class(n, d)); }

} // namespace unav

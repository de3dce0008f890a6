#pragma once

// Parser for the symbolic constant grammar used throughout the data files:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := number | 'sqrt' '(' expr ')' | '(' expr ')' | '-' factor
//   number := integer or decimal literal (parsed exactly as a rational)
//
// sqrt() requires a rational-valued operand.  Values evaluate to Exact, so
// certificates never lose precision to decimal round-tripping.

#include <cctype>
#include <string>
#include <stdexcept>

#include "exact.hpp"

namespace unav {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

class ConstParser {
public:
    explicit ConstParser(const std::string& s) : s_(s) {}

    Exact parse() {
        Exact v = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("trailing characters in constant expression: '" + s_ + "'");
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() { while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_; }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Exact expr() {
        Exact v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }

    Exact term() {
        Exact v = factor();
        for (;;) {
            if (eat('*')) v = v * factor();
            else if (eat('/')) {
                Exact d = factor();
                if (d.is_zero()) throw ParseError("division by zero in constant expression");
                v = v / d;
            } else return v;
        }
    }

    Exact factor() {
        skip_ws();
        if (eat('-')) return -factor();
        if (peek() == '(') {
            eat('(');
            Exact v = expr();
            if (!eat(')')) throw ParseError("missing ')'");
            return v;
        }
        if (std::isalpha((unsigned char)peek())) {
            std::string name;
            while (pos_ < s_.size() && std::isalpha((unsigned char)s_[pos_])) name += s_[pos_++];
            if (name != "sqrt") throw ParseError("unknown function '" + name + "'");
            if (!eat('(')) throw ParseError("expected '(' after sqrt");
            Exact v = expr();
            if (!eat(')')) throw ParseError("missing ')' after sqrt argument");
            if (!v.is_rational())
                throw ParseError("sqrt argument must be rational in this grammar");
            return Exact::sqrt_rational(v.rational());
        }
        return number();
    }

    Exact number() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        std::string intpart = s_.substr(start, pos_ - start);
        std::string fracpart;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            fracpart = s_.substr(fs, pos_ - fs);
        }
        if (intpart.empty() && fracpart.empty())
            throw ParseError("expected a number at position " + std::to_string(start) +
                             " in '" + s_ + "'");
        mpz_class num(intpart.empty() ? "0" : intpart);
        mpz_class den = 1;
        for (char c : fracpart) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        mpq_class q(num, den);
        q.canonicalize();
        return Exact(q);
    }
};

} // namespace detail

// Exact value of a constant expression.
inline Exact parse_constant(const std::string& s) { return detail::ConstParser(s).parse(); }

// Interval enclosure of a constant expression (the numerics-facing entry
// point; width is a few ulp for every constant the proof scripts use).
inline Interval make_constant(const std::string& s) { return parse_constant(s).to_interval(); }

} // namespace unav

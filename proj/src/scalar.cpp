#include "pentamap/scalar.hpp"

#include <cctype>
#include <cstdio>

namespace pentamap {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error("empty scalar literal");

    if (s.find('/') != std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0) throw Error("bad rational literal: " + text);
        if (r.get_den() == 0) throw Error("zero denominator: " + text);
        r.canonicalize();
        return r;
    }

    // Decimal / scientific literal, converted exactly.
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    long exponent = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.') {
            if (seen_dot) throw Error("bad scalar literal: " + text);
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            exponent = std::stol(s.substr(i + 1));
            break;
        } else {
            throw Error("bad scalar literal: " + text);
        }
    }
    if (!seen_digit) throw Error("bad scalar literal: " + text);
    if (digits.empty()) digits = "0";

    mpz_class num(digits, 10);
    if (neg) num = -num;
    long pow10 = exponent - frac_digits;
    mpz_class den(1);
    if (pow10 >= 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(pow10));
        num *= scale;
    } else {
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-pow10));
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& v) {
    return v.get_str();
}

std::string format_double(double v) {
    if (v == 0.0) return "0";  // fold away the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace pentamap

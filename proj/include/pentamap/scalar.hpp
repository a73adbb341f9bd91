#ifndef PENTAMAP_SCALAR_HPP
#define PENTAMAP_SCALAR_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include "pentamap/errors.hpp"

namespace pentamap {

// Exact field backend. All algebraic identities are verified over Rational;
// orbit scans and curve tracing run over double.
using Rational = mpq_class;

inline constexpr double kDefaultTol = 1e-10;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

inline double scalar_abs(double v) { return std::fabs(v); }
inline Rational scalar_abs(const Rational& v) { return Rational(abs(v)); }

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

// Strict sign, tolerance-guarded on the float backend.
inline int scalar_sign(double v, double tol = 0.0) {
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}
inline int scalar_sign(const Rational& v, double = 0.0) { return sgn(v); }

template <class S>
bool scalar_is_zero(const S& v, double tol = kDefaultTol) {
    if constexpr (is_exact_v<S>) {
        return v == 0;
    } else {
        return std::fabs(v) <= tol;
    }
}

template <class S>
bool scalar_eq(const S& a, const S& b, double tol = kDefaultTol) {
    if constexpr (is_exact_v<S>) {
        return a == b;
    } else {
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        return std::fabs(a - b) <= tol * scale;
    }
}

// Parses "p/q", plain integers, and decimal/scientific literals. On the
// exact backend decimal text converts exactly (e.g. "0.9" -> 9/10).
Rational parse_rational(const std::string& text);

inline double parse_scalar_as(const std::string& text, double) {
    return std::stod(text);
}
inline Rational parse_scalar_as(const std::string& text, const Rational&) {
    return parse_rational(text);
}

template <class S>
S parse_scalar(const std::string& text) {
    return parse_scalar_as(text, S{});
}

std::string format_rational(const Rational& v);

// 17 significant digits: enough for double round-trips.
std::string format_double(double v);

inline std::string format_scalar(double v) { return format_double(v); }
inline std::string format_scalar(const Rational& v) { return format_rational(v); }

namespace detail {

// Tiny deterministic generator (splitmix64). The standard distributions are
// implementation-defined, and verify suites must reproduce bit-for-bit.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], inclusive.
    long long integer(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double real(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Random rational with |numerator|, denominator <= max_mag, nonzero denominator.
    Rational rational(long long max_mag) {
        Rational r(static_cast<long>(integer(-max_mag, max_mag)),
                   static_cast<unsigned long>(integer(1, max_mag)));
        r.canonicalize();
        return r;
    }
};

}  // namespace detail
}  // namespace pentamap

#endif

#ifndef PENTAMAP_OCTAGON_HPP
#define PENTAMAP_OCTAGON_HPP

#include <array>
#include <optional>
#include <utility>

#include "pentamap/errors.hpp"
#include "pentamap/projective.hpp"
#include "pentamap/scalar.hpp"

namespace pentamap {

// A labeled octagon with 4-fold rotational symmetry, modulo similarity.
// The parameters (x, y) are vertex 1 of the canonical representative whose
// vertex 0 is (1, 0); vertices repeat under the quarter turn
// rho([x:y:z]) = [-y:x:z], which cycles labels by 2.
template <class S>
struct SymmetricOctagon {
    S x{};
    S y{};

    SymmetricOctagon() = default;
    SymmetricOctagon(S px, S py) : x(std::move(px)), y(std::move(py)) {}

    friend bool operator==(const SymmetricOctagon& a, const SymmetricOctagon& b) {
        return a.x == b.x && a.y == b.y;
    }
};

template <class S>
bool is_degenerate(const SymmetricOctagon<S>& o, double tol = 0.0) {
    // (x, y) equal to (0,0) or to one of the fixed canonical vertices
    // collapses a vertex pair.
    auto at = [&](double a, double b) {
        return scalar_eq(o.x, S(a), tol) && scalar_eq(o.y, S(b), tol);
    };
    return at(0, 0) || at(1, 0) || at(0, 1) || at(-1, 0) || at(0, -1);
}

template <class S>
std::array<HomogeneousPoint<S>, 8> canonical_vertices(const SymmetricOctagon<S>& o) {
    if (is_degenerate(o)) throw DegenerateInput("degenerate symmetric octagon parameters");
    const S& x = o.x;
    const S& y = o.y;
    using P = HomogeneousPoint<S>;
    return {P::affine(S(1), S(0)),  P::affine(x, y),
            P::affine(S(0), S(1)),  P::affine(S(-y), x),
            P::affine(S(-1), S(0)), P::affine(S(-x), S(-y)),
            P::affine(S(0), S(-1)), P::affine(y, S(-x))};
}

// The coefficients of the closed-form map: alpha_ij = x^i y^j + y^i x^j
// (symmetric), beta_ij = x^i y^j - y^i x^j (antisymmetric, zero on x = y).
template <class S>
struct MapCoefficients {
    S alpha10, alpha20, alpha30, alpha40, alpha11, alpha12, alpha22;
    S beta10, beta20, beta30, beta12;
    S a_numerator, a_denominator;  // A = a_numerator / a_denominator
    S b;                           // B = beta10 + 2 beta20 + beta30 + beta12
};

template <class S>
MapCoefficients<S> map_coefficients(const SymmetricOctagon<S>& o) {
    const S& x = o.x;
    const S& y = o.y;
    MapCoefficients<S> c;
    c.alpha10 = S(x + y);
    c.alpha20 = S(x * x + y * y);
    c.alpha30 = S(x * x * x + y * y * y);
    c.alpha40 = S(x * x * x * x + y * y * y * y);
    c.alpha11 = S(2 * x * y);
    c.alpha12 = S(x * y * y + y * x * x);
    c.alpha22 = S(2 * x * x * y * y);
    c.beta10 = S(x - y);
    c.beta20 = S(x * x - y * y);
    c.beta30 = S(x * x * x - y * y * y);
    c.beta12 = S(x * y * y - y * x * x);
    c.a_numerator = S(c.alpha10 + c.alpha20);
    c.a_denominator = S(S(1 + c.alpha10) *
                        S(c.alpha20 + 2 * c.alpha30 + c.alpha40 - c.alpha11 -
                          2 * c.alpha12 + c.alpha22));
    c.b = S(c.beta10 + 2 * c.beta20 + c.beta30 + c.beta12);
    return c;
}

// The 3-diagonal map in canonical coordinates:
//   x' = -A x (B - 2xy),  y' = +A y (B + 2xy).
// The coordinate axes are inside the domain (the map is (x,0) -> (-x,0)
// there); the indeterminacy set is where A's denominator vanishes.
template <class S>
SymmetricOctagon<S> t3(const SymmetricOctagon<S>& o, double pole_tol = 1e-12) {
    MapCoefficients<S> c = map_coefficients(o);
    bool pole;
    if constexpr (is_exact_v<S>) {
        pole = c.a_denominator == 0;
    } else {
        double scale = std::max(1.0, std::fabs(to_double(c.a_numerator)));
        pole = std::fabs(to_double(c.a_denominator)) <= pole_tol * scale;
    }
    if (pole) {
        if (scalar_is_zero(S(1 + c.alpha10), 0.0))
            throw PoleOfMap("1 + x + y");
        throw PoleOfMap("alpha20 + 2 alpha30 + alpha40 - alpha11 - 2 alpha12 + alpha22");
    }
    S a = S(c.a_numerator / c.a_denominator);
    S xy2 = S(2 * o.x * o.y);
    return SymmetricOctagon<S>(S(-a * o.x * S(c.b - xy2)), S(a * o.y * S(c.b + xy2)));
}

// sigma1 (x,y) -> (y,x) and sigma2 (x,y) -> (-x,-y); both conjugate t3, to
// itself and to its inverse respectively.
template <class S>
SymmetricOctagon<S> sigma1(const SymmetricOctagon<S>& o) {
    return SymmetricOctagon<S>(o.y, o.x);
}

template <class S>
SymmetricOctagon<S> sigma2(const SymmetricOctagon<S>& o) {
    return SymmetricOctagon<S>(S(-o.x), S(-o.y));
}

template <class S>
SymmetricOctagon<S> t3_inverse(const SymmetricOctagon<S>& o, double pole_tol = 1e-12) {
    return sigma2(t3(sigma2(o), pole_tol));
}

// The invariant Psi = (x - y)(x^2 + y^2 - 1) / (xy), constant along
// t3-orbits, undefined on the coordinate axes. Its level sets homogenize
// to the cubic pencil handled in cubic.hpp.
template <class S>
S psi(const SymmetricOctagon<S>& o) {
    if (scalar_is_zero(o.x, 0.0) || scalar_is_zero(o.y, 0.0)) throw UndefinedOnAxes();
    return S(S(o.x - o.y) * S(o.x * o.x + o.y * o.y - 1) / S(o.x * o.y));
}

template <class S>
std::optional<S> psi_if_defined(const SymmetricOctagon<S>& o) {
    if (scalar_is_zero(o.x, 0.0) || scalar_is_zero(o.y, 0.0)) return std::nullopt;
    return psi(o);
}

// The duality that sends a polygon to its edge-line polygon read back as a
// point polygon. An involution; preserves Psi; conjugates t3 to its
// inverse; maps the diagonal x = y onto the unit circle.
template <class S>
SymmetricOctagon<S> dual_map(const SymmetricOctagon<S>& o, double pole_tol = 1e-12) {
    const S& x = o.x;
    const S& y = o.y;
    S den = S(x * S(x * x - 2 * x + y * y + 1));
    bool pole;
    if constexpr (is_exact_v<S>) {
        pole = den == 0;
    } else {
        pole = std::fabs(to_double(den)) <= pole_tol;
    }
    if (pole) throw PoleOfMap("x (x^2 - 2x + y^2 + 1)");
    return SymmetricOctagon<S>(S(y * S(x + y - 1) / den),
                               S(-y * S(x * x - x + y * y - y) / den));
}

// The square root of t3: applying it twice is t3, and it flips the sign of
// Psi.
template <class S>
SymmetricOctagon<S> half_map(const SymmetricOctagon<S>& o, double pole_tol = 1e-12) {
    return dual_map(sigma2(o), pole_tol);
}

// Restriction of t3 to the diagonal x = y: a Mobius map with attracting
// fixed point 1/sqrt(2) (regular octagon) and repelling -1/sqrt(2)
// (star-regular octagon).
template <class S>
S diagonal_step(const S& x, double pole_tol = 1e-12) {
    S den = S(1 + 2 * x);
    if (scalar_is_zero(den, is_exact_v<S> ? 0.0 : pole_tol)) throw PoleOfMap("1 + 2x");
    return S(S(1 + x) / den);
}

}  // namespace pentamap

#endif

#ifndef PENTAMAP_CUBIC_HPP
#define PENTAMAP_CUBIC_HPP

#include <array>
#include <complex>
#include <vector>

#include "pentamap/errors.hpp"
#include "pentamap/projective.hpp"
#include "pentamap/scalar.hpp"

namespace pentamap {

// The pencil of cubics cut out by
//   V(x,y,z) = x^3 - y^3 - x^2 y + x y^2 - x z^2 + y z^2 - lambda x y z,
// the homogenization of (x-y)(x^2+y^2-1) - lambda xy. The affine part of
// the zero set is the lambda-level set of the octagon invariant.
template <class S>
struct CubicLevel {
    S lambda{};

    CubicLevel() = default;
    explicit CubicLevel(S l) : lambda(std::move(l)) {}
};

template <class S>
S cubic_value(const CubicLevel<S>& level, const HomogeneousPoint<S>& p) {
    const S& x = p[0];
    const S& y = p[1];
    const S& z = p[2];
    return S(x * x * x - y * y * y - x * x * y + x * y * y - x * z * z + y * z * z -
             level.lambda * x * y * z);
}

template <class S>
std::array<S, 3> cubic_gradient(const CubicLevel<S>& level, const HomogeneousPoint<S>& p) {
    const S& x = p[0];
    const S& y = p[1];
    const S& z = p[2];
    const S& l = level.lambda;
    return {S(-l * y * z + 3 * x * x - 2 * x * y + y * y - z * z),
            S(-l * x * z - x * x + 2 * x * y - 3 * y * y + z * z),
            S(2 * z * S(y - x) - l * x * y)};
}

// Affine shorthands over double for the tracer and scans.
double cubic_value_affine(double lambda, double x, double y);
std::array<double, 2> cubic_gradient_affine(double lambda, double x, double y);

struct SingularityResult {
    bool singular = false;
    // Witness with V = 0 and grad V = 0 (complex for lambda = +-2 and
    // lambda = +-4i sqrt(2)).
    std::array<std::complex<double>, 3> witness{};
};

// Decides singularity of E_lambda. Real singular parameters are {0, +-2};
// the only non-real ones are +-4i sqrt(2), detected through the closed-form
// branch conditions lambda(4 - lambda^2) = 0 and 256/lambda^3 + 8/lambda = 0
// rather than a general complex eigen-computation.
SingularityResult is_singular_level(std::complex<double> lambda, double window = 1e-9);

inline SingularityResult is_singular_level(double lambda, double window = 1e-9) {
    return is_singular_level(std::complex<double>(lambda, 0.0), window);
}

// The three intersections of E_lambda with the antidiagonal y = -x:
// x = 0 and the roots of 4x^2 + lambda x - 2 = 0, i.e.
// x = (-lambda +- sqrt(lambda^2 + 32)) / 8.
std::array<double, 3> antidiagonal_points(double lambda);

// One connected component of the real locus, as a polyline in the affine
// chart. Closed polylines repeat their first point at the end.
struct RealCurveComponent {
    std::vector<std::array<double, 2>> polyline;
    bool bounded = false;
    std::vector<std::array<double, 2>> l_crossings;  // on y = -x, Newton-polished
};

struct TraceOptions {
    int resolution = 2048;
    double window = 6.0;        // grid covers [-window, window]^2
    double singular_guard = 1e-6;
};

// Marching-squares trace of E_lambda over the window, Newton-polished onto
// V = 0 and linked into components. For real nonsingular lambda the result
// is exactly one bounded loop (two antidiagonal crossings) and one
// unbounded component (one crossing, passing through [1:1:0]).
std::vector<RealCurveComponent> trace_level_curve(double lambda,
                                                  const TraceOptions& opt = {});

}  // namespace pentamap

#endif

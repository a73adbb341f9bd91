#ifndef PENTAMAP_POLYGON_HPP
#define PENTAMAP_POLYGON_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "pentamap/errors.hpp"
#include "pentamap/octagon.hpp"
#include "pentamap/projective.hpp"
#include "pentamap/scalar.hpp"

namespace pentamap {

template <class S>
struct Polygon {
    std::vector<HomogeneousPoint<S>> vertices;

    std::size_t size() const { return vertices.size(); }
    const HomogeneousPoint<S>& operator[](std::size_t i) const {
        return vertices[i % vertices.size()];
    }
};

template <class S>
Polygon<S> apply_map(const ProjectiveMap<S>& m, const Polygon<S>& p) {
    Polygon<S> out;
    out.vertices.reserve(p.size());
    for (const auto& v : p.vertices) out.vertices.push_back(m(v));
    return out;
}

// The deep-diagonal map: vertex i of the image is the intersection of the
// k-diagonals (i, i+k) and (i+1, i+k+1).
template <class S>
Polygon<S> deep_diagonal(const Polygon<S>& p, std::size_t k, double tol = kDefaultTol) {
    const std::size_t n = p.size();
    if (n < 4 || k < 2 || 2 * k > n) throw DegenerateInput("need 2 <= k <= n/2 and n >= 4");
    Polygon<S> out;
    out.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto d1 = join(p[i], p[i + k], tol);
        auto d2 = join(p[i + 1], p[i + k + 1], tol);
        out.vertices.push_back(meet(d1, d2, tol));
    }
    return out;
}

// Vertex i of the dual polygon is the edge line (i, i+1) read as a point.
template <class S>
Polygon<S> polygon_dual(const Polygon<S>& p, double tol = kDefaultTol) {
    Polygon<S> out;
    out.vertices.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out.vertices.push_back(dualize(join(p[i], p[i + 1], tol)));
    return out;
}

// Projective convexity: true iff some line misses the polygon and the
// affine chart sending it to infinity shows an affinely convex polygon.
// Searches a deterministic set of candidate charts; raises Inconclusive
// when every candidate decision lands inside tolerance.
bool is_convex_projective(const Polygon<double>& p, double tol = 1e-9);

// True iff some cyclic relabeling (optionally orientation-reversing) admits
// a projective map carrying p onto q vertexwise within tol (angular metric
// on homogeneous triples).
bool projectively_equivalent(const Polygon<double>& p, const Polygon<double>& q,
                             double tol = 1e-8);

// Point conic x^T M x = 0, M symmetric.
template <class S>
struct Conic {
    std::array<std::array<S, 3>, 3> m{};

    S evaluate(const HomogeneousPoint<S>& p) const {
        S acc{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc = S(acc + m[i][j] * p[i] * p[j]);
        return acc;
    }
};

// Axis-aligned ellipse, the working form for the Poncelet construction.
struct Ellipse {
    double cx = 0, cy = 0, a = 1, b = 1;

    std::array<double, 2> point(double t) const;
    double angle_of(double x, double y) const;
    Conic<double> conic() const;
};

inline Ellipse circle(double cx, double cy, double r) { return {cx, cy, r, r}; }

struct PonceletResult {
    Polygon<double> polygon;
    double parameter = 0;  // solved family parameter
    double defect = 0;     // residual total-advance gap at the solution
};

// Closes the tangent-chord construction: from `start_angle` on the outer
// ellipse, each step draws the forward tangent to the inner conic and takes
// its second intersection with the outer ellipse. The family parameter is
// solved by bisection so the polygon closes after n steps with winding 1.
PonceletResult poncelet_polygon(const Ellipse& outer, int n, double start_angle,
                                const std::function<Ellipse(double)>& inner_family,
                                double param_lo, double param_hi,
                                double defect_tol = 1e-10);

// Quotient by similarity: divides the affine vertices (as complex numbers)
// by vertex 0 and returns vertex 1. Requires rho-symmetry with labels
// cycling by +2.
template <class S>
SymmetricOctagon<S> renormalize_symmetric_octagon(const Polygon<S>& p,
                                                  double tol = 1e-8) {
    if (p.size() != 8) throw DegenerateInput("expected an octagon");
    std::array<std::array<S, 2>, 8> aff;
    for (int i = 0; i < 8; ++i) {
        auto [x, y] = to_affine(p[static_cast<std::size_t>(i)]);
        aff[i] = {x, y};
    }
    S scale{};
    for (const auto& v : aff) {
        S m = S(scalar_abs(v[0]) + scalar_abs(v[1]));
        if (m > scale) scale = m;
    }
    for (int i = 0; i < 8; ++i) {
        // rho(x, y) = (-y, x) must send vertex i to vertex i+2
        const auto& u = aff[i];
        const auto& w = aff[(i + 2) % 8];
        S ex = S(w[0] + u[1]);
        S ey = S(w[1] - u[0]);
        bool sym;
        if constexpr (is_exact_v<S>) {
            sym = ex == 0 && ey == 0;
        } else {
            double s = std::max(1.0, to_double(scale));
            sym = std::fabs(to_double(ex)) <= tol * s && std::fabs(to_double(ey)) <= tol * s;
        }
        if (!sym) throw NotSymmetric("octagon is not rho-symmetric with +2 label shift");
    }
    S d = S(aff[0][0] * aff[0][0] + aff[0][1] * aff[0][1]);
    bool zero0;
    if constexpr (is_exact_v<S>) {
        zero0 = d == 0;
    } else {
        zero0 = std::fabs(to_double(d)) <= tol * tol;
    }
    if (zero0) throw DegenerateInput("vertex 0 at the origin");
    // (x1 + i y1) / (x0 + i y0)
    S re = S(S(aff[1][0] * aff[0][0] + aff[1][1] * aff[0][1]) / d);
    S im = S(S(aff[1][1] * aff[0][0] - aff[1][0] * aff[0][1]) / d);
    return SymmetricOctagon<S>(re, im);
}

template <class S>
Polygon<S> octagon_polygon(const SymmetricOctagon<S>& o) {
    Polygon<S> p;
    auto verts = canonical_vertices(o);
    p.vertices.assign(verts.begin(), verts.end());
    return p;
}

struct Calibration {
    int shift = 0;
    bool reversed = false;
    double max_error = 0;
};

// The labeling scheme under which the geometric 3-diagonal construction on
// canonical octagons reproduces the closed-form t3: discovered over a panel
// of random seeds and checked against the frozen constants below.
inline constexpr int kCalibratedShift = 0;
inline constexpr bool kCalibratedReversed = false;

Calibration calibrate_labeling(int panel_size = 24, std::uint64_t rng_seed = 20260810,
                               double tol = 1e-9);

// Geometric t3 through the calibrated relabeling (cross-check oracle for
// the closed form).
SymmetricOctagon<double> t3_geometric(const SymmetricOctagon<double>& o,
                                      int shift = kCalibratedShift,
                                      bool reversed = kCalibratedReversed);

}  // namespace pentamap

#endif

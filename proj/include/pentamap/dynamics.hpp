#ifndef PENTAMAP_DYNAMICS_HPP
#define PENTAMAP_DYNAMICS_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "pentamap/cubic.hpp"
#include "pentamap/errors.hpp"
#include "pentamap/octagon.hpp"
#include "pentamap/scalar.hpp"

namespace pentamap {

namespace detail {

// Exact winding of a cyclic sequence of nonzero direction vectors, assuming
// every consecutive turn has the given sign. Counts crossings of the
// positive x-axis walking the short way; usable on both backends since it
// needs only sign tests.
template <class S>
int direction_winding(const std::vector<std::array<S, 2>>& dirs, int turn_sign) {
    auto quadrant = [](const std::array<S, 2>& d) {
        int sx = scalar_sign(d[0]);
        int sy = scalar_sign(d[1]);
        if (sx > 0 && sy >= 0) return 0;
        if (sx <= 0 && sy > 0) return 1;
        if (sx < 0 && sy <= 0) return 2;
        return 3;
    };
    auto angle_less = [&](const std::array<S, 2>& u, const std::array<S, 2>& v) {
        int qu = quadrant(u), qv = quadrant(v);
        if (qu != qv) return qu < qv;
        return scalar_sign(S(u[0] * v[1] - u[1] * v[0])) > 0;
    };
    int wraps = 0;
    const std::size_t n = dirs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = dirs[i];
        const auto& v = dirs[(i + 1) % n];
        if (turn_sign > 0) {
            if (!angle_less(u, v)) ++wraps;  // CCW step wrapped past +x axis
        } else {
            if (angle_less(u, v)) ++wraps;
        }
    }
    return turn_sign > 0 ? wraps : -wraps;
}

}  // namespace detail

// Affine convexity of the canonical octagon: all eight consecutive-edge
// cross products share one strict sign and the edge directions wind exactly
// once. By the 4-fold symmetry the cross products take just two values,
//   t1 = x + y - 1   and   t2 = x + y - x^2 - y^2,
// so the convex region is the semidisk {x+y > 1} inside the circle through
// (1,0) and (0,1) centered (1/2, 1/2).
template <class S>
bool is_convex_octagon(const SymmetricOctagon<S>& o, double tol = 0.0) {
    auto verts = canonical_vertices(o);  // throws DegenerateInput when collapsed
    std::vector<std::array<S, 2>> dirs;
    dirs.reserve(8);
    for (int i = 0; i < 8; ++i) {
        const auto& a = verts[i];
        const auto& b = verts[(i + 1) % 8];
        std::array<S, 2> d{S(b[0] - a[0]), S(b[1] - a[1])};
        if (scalar_sign(d[0], tol) == 0 && scalar_sign(d[1], tol) == 0)
            throw DegenerateInput("coincident consecutive vertices");
        dirs.push_back(d);
    }
    int sign = 0;
    for (int i = 0; i < 8; ++i) {
        const auto& u = dirs[i];
        const auto& v = dirs[(i + 1) % 8];
        int s = scalar_sign(S(u[0] * v[1] - u[1] * v[0]), tol);
        if (s == 0) return false;
        if (sign == 0) sign = s;
        if (s != sign) return false;
    }
    int w = detail::direction_winding(dirs, sign);
    return w == 1 || w == -1;
}

template <class S>
struct OrbitEntry {
    long j = 0;
    S x{};
    S y{};
    std::optional<S> psi;  // undefined on the coordinate axes
    bool convex = false;
    bool pole = false;  // the step FROM this entry hit an indeterminacy point
};

// The (8,3)-pentagram orbit of the canonical family: entries for
// j in [-n_bwd, n_fwd], truncated (and flagged) at poles, with Psi and the
// convexity flag recorded per step.
template <class S>
struct OrbitRecord {
    std::vector<OrbitEntry<S>> steps;  // ascending j
};

template <class S>
OrbitRecord<S> orbit(const SymmetricOctagon<S>& seed, long n_fwd, long n_bwd,
                     double pole_tol = 1e-9) {
    if (is_degenerate(seed)) throw DegenerateInput("degenerate orbit seed");
    auto entry_for = [&](long j, const SymmetricOctagon<S>& o) {
        OrbitEntry<S> e;
        e.j = j;
        e.x = o.x;
        e.y = o.y;
        e.psi = psi_if_defined(o);
        try {
            e.convex = is_convex_octagon(o);
        } catch (const DegenerateInput&) {
            e.convex = false;
        }
        return e;
    };

    std::vector<OrbitEntry<S>> bwd;
    SymmetricOctagon<S> o = seed;
    for (long j = -1; j >= -n_bwd; --j) {
        try {
            o = t3_inverse(o, pole_tol);
        } catch (const PoleOfMap&) {
            if (!bwd.empty())
                bwd.back().pole = true;
            break;
        }
        if (is_degenerate(o)) break;
        bwd.push_back(entry_for(j, o));
    }

    OrbitRecord<S> rec;
    rec.steps.reserve(bwd.size() + 1 + static_cast<std::size_t>(n_fwd));
    for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) rec.steps.push_back(*it);
    rec.steps.push_back(entry_for(0, seed));

    o = seed;
    for (long j = 1; j <= n_fwd; ++j) {
        try {
            o = t3(o, pole_tol);
        } catch (const PoleOfMap&) {
            rec.steps.back().pole = true;
            break;
        }
        if (is_degenerate(o)) {
            rec.steps.back().pole = true;
            break;
        }
        rec.steps.push_back(entry_for(j, o));
    }
    return rec;
}

// Smallest j > 0 (largest j < 0) whose iterate is non-convex; nullopt when
// none is found within the cap. Orbits that die at a pole count as escaped
// there: the polygon has left the space, let alone the convex region.
struct EscapeTimes {
    std::optional<long> fwd;
    std::optional<long> bwd;
};

EscapeTimes escape_times(const SymmetricOctagon<double>& seed, long cap,
                         double pole_tol = 1e-9);

struct ScanCell {
    double x = 0, y = 0;
    bool in_region = false;     // seed octagon convex
    long fwd = 0, bwd = 0;      // escape steps; -1 = censored at cap
};

struct ScanOptions {
    double x0 = -0.25, x1 = 1.25, y0 = -0.25, y1 = 1.25;
    int nx = 128, ny = 128;
    long cap = 10000;
};

struct ScanField {
    ScanOptions opt;
    std::vector<ScanCell> cells;  // row-major, y outer

    const ScanCell& at(int ix, int iy) const {
        return cells[static_cast<std::size_t>(iy) * opt.nx + ix];
    }
};

// Escape-time field over a parameter window; cells outside the convex
// region are marked escaped at 0. Parallel over rows, deterministic order.
ScanField escape_scan(const ScanOptions& opt);

struct RotationEstimate {
    double value = 0;        // in [0, 1)
    double convergence = 0;  // |estimate(n) - estimate(n/2)|
    std::size_t component = 0;
    std::size_t iterations = 0;
};

// Combinatorial rotation number of f = t3^2 on the traced component of
// E_lambda through the seed, using the polyline's cyclic arc-length
// parameter as circle coordinate.
RotationEstimate rotation_number_estimate(double lambda, std::array<double, 2> seed,
                                          long n, const TraceOptions& topt = {});

// Sum of the coordinates of t3^2 (x, -x), as the closed-form rational
// expression; zero exactly where t3^2 returns the antidiagonal point to the
// antidiagonal. Denominator roots raise PoleOfMap.
template <class S>
S antidiagonal_fixed_residual(const S& x) {
    S x2 = S(x * x);
    S x4 = S(x2 * x2);
    S x6 = S(x4 * x2);
    S x8 = S(x4 * x4);
    S x10 = S(x8 * x2);
    S num = S(4 * x2 * S(-1 - 2 * x2 + x4 - 6 * x6 + 32 * x10));
    S d1 = S(-1 + x2 + 4 * x4);
    S d2 = S(1 - 2 * x2 + x4 + 24 * x6 + 16 * x8);
    if (scalar_is_zero(d1, is_exact_v<S> ? 0.0 : 1e-14))
        throw PoleOfMap("-1 + x^2 + 4 x^4");
    if (scalar_is_zero(d2, is_exact_v<S> ? 0.0 : 1e-14))
        throw PoleOfMap("1 - 2 x^2 + x^4 + 24 x^6 + 16 x^8");
    return S(num / S(d1 * d2));
}

// Disjoint open arcs on R/Z with endpoints in [0,1).
struct CircleArcSet {
    std::vector<std::pair<double, double>> arcs;

    bool contains(double p) const;
    // Minor: some rotation carries the set into (0, 1/2), i.e. the largest
    // complementary gap has length >= 1/2.
    bool is_minor() const;
};

// First k > 0 with p + k theta (mod 1) outside S, or nullopt within cap.
// Guaranteed finite when S is minor and theta is nontrivial.
std::optional<long> minor_orbit_escape(const CircleArcSet& s, double theta, double p,
                                       long cap);

}  // namespace pentamap

#endif

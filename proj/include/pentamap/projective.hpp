#ifndef PENTAMAP_PROJECTIVE_HPP
#define PENTAMAP_PROJECTIVE_HPP

#include <array>
#include <cstddef>
#include <utility>

#include "pentamap/errors.hpp"
#include "pentamap/scalar.hpp"

namespace pentamap {

// Points and lines of the projective plane as homogeneous triples up to
// scale. Join and meet are both cross products, which is what makes the
// pentagram map cheap to compute.

template <class S>
struct HomogeneousPoint {
    std::array<S, 3> v{};

    HomogeneousPoint() = default;
    HomogeneousPoint(S x, S y, S z) : v{std::move(x), std::move(y), std::move(z)} {}

    static HomogeneousPoint affine(const S& x, const S& y) {
        return HomogeneousPoint(x, y, S(1));
    }

    const S& operator[](std::size_t i) const { return v[i]; }
    S& operator[](std::size_t i) { return v[i]; }
};

template <class S>
struct ProjectiveLine {
    std::array<S, 3> v{};

    ProjectiveLine() = default;
    ProjectiveLine(S a, S b, S c) : v{std::move(a), std::move(b), std::move(c)} {}

    const S& operator[](std::size_t i) const { return v[i]; }
    S& operator[](std::size_t i) { return v[i]; }
};

namespace detail {

template <class S>
std::array<S, 3> cross(const std::array<S, 3>& a, const std::array<S, 3>& b) {
    return {S(a[1] * b[2] - a[2] * b[1]),
            S(a[2] * b[0] - a[0] * b[2]),
            S(a[0] * b[1] - a[1] * b[0])};
}

template <class S>
S max_abs(const std::array<S, 3>& a) {
    S m = scalar_abs(a[0]);
    for (int i = 1; i < 3; ++i) {
        S c = scalar_abs(a[i]);
        if (c > m) m = c;
    }
    return m;
}

template <class S>
bool triple_is_zero(const std::array<S, 3>& a, double tol, const S& scale) {
    if constexpr (is_exact_v<S>) {
        (void)tol;
        (void)scale;
        return a[0] == 0 && a[1] == 0 && a[2] == 0;
    } else {
        double s = std::max(1.0, to_double(scale));
        return to_double(max_abs(a)) <= tol * s;
    }
}

}  // namespace detail

template <class S>
bool equivalent(const HomogeneousPoint<S>& p, const HomogeneousPoint<S>& q,
                double tol = kDefaultTol) {
    auto c = detail::cross(p.v, q.v);
    return detail::triple_is_zero(c, tol, S(detail::max_abs(p.v) * detail::max_abs(q.v)));
}

template <class S>
bool equivalent(const ProjectiveLine<S>& l, const ProjectiveLine<S>& m,
                double tol = kDefaultTol) {
    auto c = detail::cross(l.v, m.v);
    return detail::triple_is_zero(c, tol, S(detail::max_abs(l.v) * detail::max_abs(m.v)));
}

template <class S>
ProjectiveLine<S> join(const HomogeneousPoint<S>& p, const HomogeneousPoint<S>& q,
                       double tol = kDefaultTol) {
    auto c = detail::cross(p.v, q.v);
    if (detail::triple_is_zero(c, tol, S(detail::max_abs(p.v) * detail::max_abs(q.v))))
        throw DegenerateInput("join of scale-equivalent points");
    return ProjectiveLine<S>(c[0], c[1], c[2]);
}

template <class S>
HomogeneousPoint<S> meet(const ProjectiveLine<S>& l, const ProjectiveLine<S>& m,
                         double tol = kDefaultTol) {
    auto c = detail::cross(l.v, m.v);
    if (detail::triple_is_zero(c, tol, S(detail::max_abs(l.v) * detail::max_abs(m.v))))
        throw DegenerateInput("meet of scale-equivalent lines");
    return HomogeneousPoint<S>(c[0], c[1], c[2]);
}

// The duality isomorphism: coordinate-identity swap of role. Collinear
// points go to coincident lines and vice versa.
template <class S>
ProjectiveLine<S> dualize(const HomogeneousPoint<S>& p) {
    return ProjectiveLine<S>(p[0], p[1], p[2]);
}

template <class S>
HomogeneousPoint<S> dualize(const ProjectiveLine<S>& l) {
    return HomogeneousPoint<S>(l[0], l[1], l[2]);
}

template <class S>
S incidence(const ProjectiveLine<S>& l, const HomogeneousPoint<S>& p) {
    return S(l[0] * p[0] + l[1] * p[1] + l[2] * p[2]);
}

template <class S>
bool incident(const ProjectiveLine<S>& l, const HomogeneousPoint<S>& p,
              double tol = kDefaultTol) {
    S d = incidence(l, p);
    if constexpr (is_exact_v<S>) {
        return d == 0;
    } else {
        double scale = std::max(1.0, to_double(detail::max_abs(l.v)) *
                                         to_double(detail::max_abs(p.v)));
        return std::fabs(to_double(d)) <= tol * scale;
    }
}

template <class S>
bool on_line_at_infinity(const HomogeneousPoint<S>& p, double tol = kDefaultTol) {
    if constexpr (is_exact_v<S>) {
        return p[2] == 0;
    } else {
        return std::fabs(p[2]) <= tol * std::max(1.0, to_double(detail::max_abs(p.v)));
    }
}

// Divides by the last coordinate whose magnitude clears eps * (max
// coordinate), scanning z, y, x. Idempotent.
template <class S>
HomogeneousPoint<S> normalize(const HomogeneousPoint<S>& p, double tol = kDefaultTol) {
    S m = detail::max_abs(p.v);
    if (scalar_is_zero(m, 0.0)) throw DegenerateInput("zero homogeneous triple");
    for (int i = 2; i >= 0; --i) {
        bool ok;
        if constexpr (is_exact_v<S>) {
            ok = p[i] != 0;
        } else {
            ok = std::fabs(to_double(p[i])) > tol * to_double(m);
        }
        if (ok) {
            return HomogeneousPoint<S>(S(p[0] / p[i]), S(p[1] / p[i]), S(p[2] / p[i]));
        }
    }
    throw DegenerateInput("near-degenerate homogeneous triple");
}

template <class S>
std::pair<S, S> to_affine(const HomogeneousPoint<S>& p, double tol = kDefaultTol) {
    if (on_line_at_infinity(p, tol)) throw DegenerateInput("point on the line at infinity");
    return {S(p[0] / p[2]), S(p[1] / p[2])};
}

// 3x3 matrix acting on points; nonzero determinant.
template <class S>
struct ProjectiveMap {
    std::array<std::array<S, 3>, 3> m{};

    static ProjectiveMap identity() {
        ProjectiveMap r;
        for (int i = 0; i < 3; ++i) r.m[i][i] = S(1);
        return r;
    }

    HomogeneousPoint<S> operator()(const HomogeneousPoint<S>& p) const {
        HomogeneousPoint<S> out;
        for (int i = 0; i < 3; ++i)
            out[i] = S(m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2]);
        return out;
    }

    ProjectiveMap operator*(const ProjectiveMap& o) const {
        ProjectiveMap r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.m[i][j] =
                    S(m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j]);
        return r;
    }

    S determinant() const {
        return S(m[0][0] * S(m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * S(m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * S(m[1][0] * m[2][1] - m[1][1] * m[2][0]));
    }

    // Adjugate-based inverse, exact on the rational backend.
    ProjectiveMap inverse() const {
        S det = determinant();
        if (scalar_is_zero(det)) throw DegenerateInput("singular projective map");
        ProjectiveMap r;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
                int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
                r.m[i][j] = S(S(m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / det);
            }
        }
        return r;
    }
};

namespace detail {

template <class S>
S det3(const std::array<S, 3>& a, const std::array<S, 3>& b, const std::array<S, 3>& c) {
    return S(a[0] * S(b[1] * c[2] - b[2] * c[1]) - a[1] * S(b[0] * c[2] - b[2] * c[0]) +
             a[2] * S(b[0] * c[1] - b[1] * c[0]));
}

// Map sending the standard frame e1,e2,e3,(1,1,1) to the quadruple.
template <class S>
ProjectiveMap<S> frame_map(const std::array<HomogeneousPoint<S>, 4>& q, double tol) {
    S d = det3(q[0].v, q[1].v, q[2].v);
    double scale = 1.0;
    if constexpr (!is_exact_v<S>) {
        scale = std::max(1.0, to_double(max_abs(q[0].v)) * to_double(max_abs(q[1].v)) *
                                  to_double(max_abs(q[2].v)));
    }
    auto collinear = [&](const S& det, double s) {
        if constexpr (is_exact_v<S>) {
            (void)s;
            return det == 0;
        } else {
            return std::fabs(to_double(det)) <= tol * s;
        }
    };
    if (collinear(d, scale)) throw DegenerateInput("three of the four frame points are collinear");
    // Cramer: [q0 q1 q2] * (c0,c1,c2) = q3
    S c0 = S(det3(q[3].v, q[1].v, q[2].v) / d);
    S c1 = S(det3(q[0].v, q[3].v, q[2].v) / d);
    S c2 = S(det3(q[0].v, q[1].v, q[3].v) / d);
    for (const S& c : {c0, c1, c2}) {
        if (scalar_is_zero(c, tol))
            throw DegenerateInput("three of the four frame points are collinear");
    }
    ProjectiveMap<S> r;
    for (int i = 0; i < 3; ++i) {
        r.m[i][0] = S(c0 * q[0][i]);
        r.m[i][1] = S(c1 * q[1][i]);
        r.m[i][2] = S(c2 * q[2][i]);
    }
    return r;
}

}  // namespace detail

// The unique projective map sending src_i -> dst_i (i = 1..4), both
// quadruples in general position.
template <class S>
ProjectiveMap<S> map_from_four_points(const std::array<HomogeneousPoint<S>, 4>& src,
                                      const std::array<HomogeneousPoint<S>, 4>& dst,
                                      double tol = kDefaultTol) {
    return detail::frame_map(dst, tol) * detail::frame_map(src, tol).inverse();
}

}  // namespace pentamap

#endif

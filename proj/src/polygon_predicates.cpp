#include <algorithm>
#include <cmath>

#include "pentamap/polygon.hpp"

namespace pentamap {

namespace {

using Pt = HomogeneousPoint<double>;

double norm3(const Pt& p) {
    return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

// Scale-invariant distance: sine of the angle between the spanned lines.
double projective_distance(const Pt& p, const Pt& q) {
    auto c = detail::cross(p.v, q.v);
    double num = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
    return num / (norm3(p) * norm3(q));
}

// Affine convexity with an explicit outcome for "too close to call".
enum class Verdict { kConvex, kNotConvex, kMarginal };

Verdict affine_convexity(const std::vector<std::array<double, 2>>& pts, double tol) {
    const std::size_t n = pts.size();
    double scale = 0;
    for (const auto& p : pts) scale = std::max({scale, std::fabs(p[0]), std::fabs(p[1])});
    scale = std::max(scale, 1.0);
    std::vector<std::array<double, 2>> dirs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % n];
        dirs[i] = {b[0] - a[0], b[1] - a[1]};
        if (std::hypot(dirs[i][0], dirs[i][1]) <= tol * scale) return Verdict::kMarginal;
    }
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = dirs[i];
        const auto& v = dirs[(i + 1) % n];
        double c = u[0] * v[1] - u[1] * v[0];
        double cs = std::hypot(u[0], u[1]) * std::hypot(v[0], v[1]);
        if (std::fabs(c) <= tol * cs) return Verdict::kMarginal;
        int s = c > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) return Verdict::kNotConvex;
    }
    // Turning number via accumulated exterior angles.
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = dirs[i];
        const auto& v = dirs[(i + 1) % n];
        total += std::atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1]);
    }
    double w = total / (2 * M_PI);
    if (std::fabs(std::fabs(w) - 1.0) < 0.25) return Verdict::kConvex;
    return Verdict::kNotConvex;
}

// Deterministic direction candidates: coordinate axes, the vertex-sum
// direction, and a spherical Fibonacci sweep.
std::vector<std::array<double, 3>> chart_candidates(const Polygon<double>& p) {
    std::vector<std::array<double, 3>> out = {
        {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
    std::array<double, 3> s{0, 0, 0};
    for (const auto& v : p.vertices) {
        double nv = norm3(v);
        if (nv == 0) continue;
        // orient toward positive z-ish hemisphere for a stable sum
        double sign = v[2] >= 0 ? 1.0 : -1.0;
        s[0] += sign * v[0] / nv;
        s[1] += sign * v[1] / nv;
        s[2] += sign * v[2] / nv;
    }
    out.push_back(s);
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    const int m = 256;
    for (int i = 0; i < m; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / m;
        double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = ga * i;
        out.push_back({rr * std::cos(phi), rr * std::sin(phi), z});
    }
    return out;
}

}  // namespace

bool is_convex_projective(const Polygon<double>& p, double tol) {
    const std::size_t n = p.size();
    if (n < 3) throw DegenerateInput("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i)
        if (projective_distance(p[i], p[i + 1]) < 1e-12)
            throw DegenerateInput("repeated consecutive vertices");

    bool saw_marginal = false;
    for (const auto& w : chart_candidates(p)) {
        double wn = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        if (wn == 0) continue;
        // The chart is usable only if the line dual to w clears every vertex.
        std::vector<std::array<double, 2>> aff(n);
        bool usable = true;
        // Orthonormal basis completing w.
        std::array<double, 3> e1, e2;
        if (std::fabs(w[0]) <= std::fabs(w[1]) && std::fabs(w[0]) <= std::fabs(w[2]))
            e1 = {0, -w[2], w[1]};
        else if (std::fabs(w[1]) <= std::fabs(w[2]))
            e1 = {-w[2], 0, w[0]};
        else
            e1 = {-w[1], w[0], 0};
        double e1n = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
        for (auto& c : e1) c /= e1n;
        e2 = {w[1] / wn * e1[2] - w[2] / wn * e1[1], w[2] / wn * e1[0] - w[0] / wn * e1[2],
              w[0] / wn * e1[1] - w[1] / wn * e1[0]};
        for (std::size_t i = 0; i < n; ++i) {
            const Pt& v = p[i];
            double d = (w[0] * v[0] + w[1] * v[1] + w[2] * v[2]) / (wn * norm3(v));
            if (std::fabs(d) < 1e-6) {
                usable = false;
                break;
            }
            double hx = e1[0] * v[0] + e1[1] * v[1] + e1[2] * v[2];
            double hy = e2[0] * v[0] + e2[1] * v[1] + e2[2] * v[2];
            double hz = (w[0] * v[0] + w[1] * v[1] + w[2] * v[2]) / wn;
            aff[i] = {hx / hz, hy / hz};
        }
        if (!usable) continue;
        switch (affine_convexity(aff, tol)) {
            case Verdict::kConvex:
                return true;
            case Verdict::kMarginal:
                saw_marginal = true;
                break;
            case Verdict::kNotConvex:
                break;
        }
    }
    if (saw_marginal)
        throw Inconclusive("convexity decision within tolerance in every viable chart");
    return false;
}

bool projectively_equivalent(const Polygon<double>& p, const Polygon<double>& q,
                             double tol) {
    const std::size_t n = p.size();
    if (n != q.size() || n < 4) return false;

    // A general-position quadruple of p, greedily.
    std::array<std::size_t, 4> idx{0, 0, 0, 0};
    {
        std::size_t found = 0;
        for (std::size_t i = 0; i < n && found < 4; ++i) {
            idx[found] = i;
            bool ok = true;
            if (found >= 2) {
                for (std::size_t a = 0; a + 2 <= found && ok; ++a)
                    for (std::size_t b = a + 1; b + 1 <= found && ok; ++b) {
                        double d = detail::det3(p[idx[a]].v, p[idx[b]].v, p[i].v);
                        double sc = norm3(p[idx[a]]) * norm3(p[idx[b]]) * norm3(p[i]);
                        if (std::fabs(d) <= 1e-9 * sc) ok = false;
                    }
            }
            if (ok) ++found;
        }
        if (found < 4) throw DegenerateInput("no general-position quadruple in polygon");
    }

    // dir=+1 matches p[i] to q[shift + i]; dir=-1 to q[shift - i].
    auto q_index = [&](std::size_t shift, int dir, std::size_t i) {
        return dir > 0 ? (shift + i) % n : (shift + 4 * n - i) % n;
    };
    auto try_match = [&](std::size_t shift, int dir) {
        std::array<Pt, 4> src, dst;
        for (int k = 0; k < 4; ++k) {
            src[k] = p[idx[k]];
            dst[k] = q[q_index(shift, dir, idx[k])];
        }
        ProjectiveMap<double> m;
        try {
            m = map_from_four_points(src, dst, 1e-12);
        } catch (const DegenerateInput&) {
            return false;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (projective_distance(m(p[i]), q[q_index(shift, dir, i)]) > tol)
                return false;
        }
        return true;
    };

    for (std::size_t shift = 0; shift < n; ++shift) {
        if (try_match(shift, +1)) return true;
        if (try_match(shift, -1)) return true;
    }
    return false;
}

}  // namespace pentamap

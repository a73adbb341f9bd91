#include <algorithm>
#include <cmath>

#include "pentamap/polygon.hpp"

namespace pentamap {

std::array<double, 2> Ellipse::point(double t) const {
    return {cx + a * std::cos(t), cy + b * std::sin(t)};
}

double Ellipse::angle_of(double x, double y) const {
    return std::atan2((y - cy) / b, (x - cx) / a);
}

Conic<double> Ellipse::conic() const {
    // (x-cx)^2/a^2 + (y-cy)^2/b^2 - 1 = 0, homogenized and symmetrized.
    Conic<double> c;
    double ia = 1.0 / (a * a), ib = 1.0 / (b * b);
    c.m[0][0] = ia;
    c.m[1][1] = ib;
    c.m[0][2] = c.m[2][0] = -cx * ia;
    c.m[1][2] = c.m[2][1] = -cy * ib;
    c.m[2][2] = cx * cx * ia + cy * cy * ib - 1.0;
    return c;
}

namespace {

using Pt = HomogeneousPoint<double>;

double quad_form(const Conic<double>& c, const Pt& p, const Pt& q) {
    double acc = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += c.m[i][j] * p[i] * q[j];
    return acc;
}

// Second intersection of a line through `p` (on the conic) with the conic.
// The line is given by a second point `q`; parameterize p + t q, so
// pp + 2 t pq + t^2 qq = 0 with one root near t = 0 (p itself).
Pt second_intersection(const Conic<double>& c, const Pt& p, const Pt& q) {
    double pq = quad_form(c, p, q);
    double qq = quad_form(c, q, q);
    double pp = quad_form(c, p, p);  // ~0, p on the conic
    if (std::fabs(qq) < 1e-300) throw DegenerateInput("tangent-line reintersection failed");
    double disc = std::max(pq * pq - qq * pp, 0.0);
    double s = std::sqrt(disc);
    double t1 = (-pq + s) / qq;
    double t2 = (-pq - s) / qq;
    double t = std::fabs(t1) > std::fabs(t2) ? t1 : t2;  // the non-p root
    return Pt(p[0] + t * q[0], p[1] + t * q[1], p[2] + t * q[2]);
}

// Touch points of the two tangents from p to the conic: intersections of
// the polar line of p with the conic.
std::array<Pt, 2> tangent_touch_points(const Conic<double>& c, const Pt& p) {
    // Polar line l = M p; parameterize it by two of its points.
    std::array<double, 3> l{};
    for (int i = 0; i < 3; ++i)
        l[i] = c.m[i][0] * p[0] + c.m[i][1] * p[1] + c.m[i][2] * p[2];
    // Two distinct points on l: pick the two largest-|coefficient| axes.
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::fabs(l[i]) > std::fabs(l[k])) k = i;
    int u = (k + 1) % 3, v = (k + 2) % 3;
    Pt a, b;
    a[u] = 1;
    a[v] = 0;
    a[k] = -l[u] / l[k];
    b[u] = 0;
    b[v] = 1;
    b[k] = -l[v] / l[k];
    // Intersect l with the conic: quadratic in a + t b.
    double aa = quad_form(c, a, a), ab = quad_form(c, a, b), bb = quad_form(c, b, b);
    double disc = ab * ab - aa * bb;
    if (disc < 0) {
        if (disc > -1e-12 * std::fabs(aa * bb)) disc = 0;
        else throw DegenerateInput("point inside the inner conic: no real tangents");
    }
    double s = std::sqrt(disc);
    // Stable quadratic roots for t where aa + 2 t ab + t^2 bb = 0.
    double t1, t2;
    if (std::fabs(bb) < 1e-300) {
        t1 = t2 = -aa / (2 * ab);
    } else {
        double q = -(ab + (ab >= 0 ? s : -s));
        if (std::fabs(q) > 1e-300) {
            t1 = q / bb;
            t2 = aa / q;
        } else {
            t1 = t2 = 0;
        }
    }
    auto mk = [&](double t) {
        return Pt(a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]);
    };
    return {mk(t1), mk(t2)};
}

double wrap_2pi(double t) {
    const double two_pi = 2 * M_PI;
    t = std::fmod(t, two_pi);
    return t < 0 ? t + two_pi : t;
}

struct Advance {
    Pt next;
    double dt;  // angular advance in (0, 2 pi)
};

// One tangent-chord step, taking the forward (smaller positive advance)
// tangent.
Advance step(const Ellipse& outer, const Conic<double>& inner, const Pt& v, double t_cur) {
    auto touches = tangent_touch_points(inner, v);
    Advance best{};
    best.dt = 1e300;
    for (const auto& q : touches) {
        Pt w = second_intersection(outer.conic(), v, q);
        if (std::fabs(w[2]) < 1e-14) continue;
        double t_next = outer.angle_of(w[0] / w[2], w[1] / w[2]);
        double dt = wrap_2pi(t_next - t_cur);
        if (dt > 1e-12 && dt < best.dt) {
            best.dt = dt;
            best.next = w;
        }
    }
    if (best.dt > 7) throw DegenerateInput("tangent-chord step failed to advance");
    return best;
}

// Total angular advance of n steps minus one full turn.
double closure_defect(const Ellipse& outer, const Ellipse& inner, int n,
                      double start_angle, Polygon<double>* out_poly) {
    Conic<double> ic = inner.conic();
    auto [x0, y0] = outer.point(start_angle);
    Pt v = Pt::affine(x0, y0);
    double t = start_angle;
    double total = 0;
    if (out_poly) out_poly->vertices.clear();
    for (int i = 0; i < n; ++i) {
        if (out_poly) out_poly->vertices.push_back(v);
        Advance adv = step(outer, ic, v, t);
        total += adv.dt;
        t = wrap_2pi(t + adv.dt);
        v = adv.next;
    }
    return total - 2 * M_PI;
}

}  // namespace

PonceletResult poncelet_polygon(const Ellipse& outer, int n, double start_angle,
                                const std::function<Ellipse(double)>& inner_family,
                                double param_lo, double param_hi, double defect_tol) {
    if (n < 3) throw DegenerateInput("need n >= 3");
    double lo = param_lo, hi = param_hi;
    double f_lo, f_hi;
    try {
        f_lo = closure_defect(outer, inner_family(lo), n, start_angle, nullptr);
        f_hi = closure_defect(outer, inner_family(hi), n, start_angle, nullptr);
    } catch (const DegenerateInput& e) {
        throw NoClosure(std::string("construction degenerate at family endpoint: ") + e.what());
    }
    if ((f_lo > 0) == (f_hi > 0))
        throw NoClosure("closure defect does not change sign over the family range");

    // The defect is continuous and monotone for nested families; bisect.
    double mid = 0.5 * (lo + hi), f_mid = 0;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        f_mid = closure_defect(outer, inner_family(mid), n, start_angle, nullptr);
        if (std::fabs(f_mid) < defect_tol || hi - lo < 1e-12 * std::max(1.0, std::fabs(hi)))
            break;
        if ((f_mid > 0) == (f_lo > 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    PonceletResult res;
    res.parameter = mid;
    res.defect = closure_defect(outer, inner_family(mid), n, start_angle, &res.polygon);
    if (std::fabs(res.defect) > std::max(defect_tol, 1e-8))
        throw NoClosure("bisection stalled before reaching the defect tolerance");
    return res;
}

}  // namespace pentamap

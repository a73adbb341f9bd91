#include <doctest.h>

#include <cmath>

#include "pentamap/dynamics.hpp"

using namespace pentamap;

namespace {

using QOct = SymmetricOctagon<Rational>;
using DOct = SymmetricOctagon<double>;

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double xstar() { return 0.5 * std::sqrt(0.5 * (1.0 + std::sqrt(17.0))); }

double lambda_star() {
    double x = xstar();
    return (2 * x) * (2 * x * x - 1) / (-x * x);
}

}  // namespace

TEST_CASE("convexity on the diagonal is exactly 1/2 < x < 1") {
    CHECK(is_convex_octagon(DOct(kInvSqrt2, kInvSqrt2)));
    for (double x : {0.51, 0.7, 0.99}) CHECK(is_convex_octagon(DOct(x, x)));
    for (double x : {0.49, 0.2, 1.01, 1.5, -0.3, -0.9}) {
        CAPTURE(x);
        CHECK_FALSE(is_convex_octagon(DOct(x, x)));
    }
    // exact backend agrees at rational probes
    CHECK(is_convex_octagon(QOct(q(3, 4), q(3, 4))));
    CHECK_FALSE(is_convex_octagon(QOct(q(1, 4), q(1, 4))));
}

TEST_CASE("star-regular octagon turns uniformly but winds three times") {
    // all eight cross products share a sign there, so the winding test is
    // what rejects it
    CHECK_FALSE(is_convex_octagon(DOct(-kInvSqrt2, -kInvSqrt2)));
}

TEST_CASE("convexity is symmetric under the label mirror sigma1") {
    detail::Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        double x = rng.real(-1.5, 1.5), y = rng.real(-1.5, 1.5);
        DOct o(x, y);
        if (is_degenerate(o, 1e-9)) continue;
        bool a, b;
        try {
            a = is_convex_octagon(o);
            b = is_convex_octagon(sigma1(o));
        } catch (const DegenerateInput&) {
            continue;
        }
        CHECK(a == b);
    }
}

TEST_CASE("orbit records psi constantly and flags axis points undefined") {
    QOct o(q(9, 10), q(2, 5));
    auto rec = orbit(o, 4, 2);
    REQUIRE(rec.steps.size() == 7);
    Rational expected = psi(o);
    long prev_j = rec.steps.front().j - 1;
    for (const auto& e : rec.steps) {
        CHECK(e.j == prev_j + 1);
        prev_j = e.j;
        REQUIRE(e.psi.has_value());
        CHECK(*e.psi == expected);
    }

    // axis seeds: psi undefined but the orbit still runs
    auto ax = orbit(QOct(q(2), q(0)), 2, 0);
    CHECK(ax.steps.size() == 3);
    CHECK_FALSE(ax.steps[0].psi.has_value());
    CHECK(ax.steps[1].x == q(-2));
    CHECK(ax.steps[2].x == q(2));
}

TEST_CASE("orbit truncates at a pole with a flag") {
    // 1 + x + y = 0 is a pole of t3
    auto rec = orbit(DOct(-2.0, 1.0), 5, 0, 1e-9);
    CHECK(rec.steps.size() == 1);
    CHECK(rec.steps.back().pole);
}

TEST_CASE("orbit from the fixed point is constant") {
    // forward iteration is pinned at the double fixed point; backward
    // iteration is repelling there, so roundoff drifts at (1+sqrt2)^2 per
    // step and only a few entries stay meaningful
    auto rec = orbit(DOct(kInvSqrt2, kInvSqrt2), 10, 6);
    for (const auto& e : rec.steps) {
        double tol = e.j >= 0 ? 1e-14 : 1e-6;
        CHECK(std::fabs(e.x - kInvSqrt2) < tol);
        CHECK(std::fabs(e.y - kInvSqrt2) < tol);
        CHECK(e.convex);
    }
}

TEST_CASE("orbit on the psi=-2 line: entries repeat with period 6") {
    auto rec = orbit(QOct(q(5), q(6)), 12, 0);
    REQUIRE(rec.steps.size() == 13);
    for (std::size_t i = 0; i + 6 < rec.steps.size(); ++i) {
        CHECK(rec.steps[i].x == rec.steps[i + 6].x);
        CHECK(rec.steps[i].y == rec.steps[i + 6].y);
    }
}

TEST_CASE("diagonal seeds stay convex forward, escape backward") {
    EscapeTimes et = escape_times(DOct(0.8, 0.8), 1000);
    CHECK_FALSE(et.fwd.has_value());
    REQUIRE(et.bwd.has_value());
    CHECK(*et.bwd < 0);
    CHECK(*et.bwd >= -1000);
}

TEST_CASE("unit-circle seeds stay convex backward, escape forward") {
    DOct o(std::cos(40.0 * M_PI / 180.0), std::sin(40.0 * M_PI / 180.0));
    EscapeTimes et = escape_times(o, 1000);
    CHECK_FALSE(et.bwd.has_value());
    REQUIRE(et.fwd.has_value());
    CHECK(*et.fwd > 0);
}

TEST_CASE("generic convex seeds escape both ways; fixed point never escapes") {
    EscapeTimes et = escape_times(DOct(0.75, 0.60), 10000);
    REQUIRE(et.fwd.has_value());
    REQUIRE(et.bwd.has_value());

    EscapeTimes fixed = escape_times(DOct(kInvSqrt2, kInvSqrt2), 2000);
    CHECK_FALSE(fixed.fwd.has_value());
    CHECK_FALSE(fixed.bwd.has_value());
}

TEST_CASE("escape scan marks regions and censors the invariant sets") {
    ScanOptions opt;
    opt.nx = opt.ny = 32;
    opt.cap = 2000;
    auto field = escape_scan(opt);
    REQUIRE(field.cells.size() == 32u * 32u);
    long in_region = 0, both_finite = 0, diag_censored = 0;
    for (int iy = 0; iy < 32; ++iy) {
        for (int ix = 0; ix < 32; ++ix) {
            const ScanCell& c = field.at(ix, iy);
            if (!c.in_region) {
                CHECK(c.fwd == 0);
                CHECK(c.bwd == 0);
                continue;
            }
            ++in_region;
            if (c.fwd > 0 && c.bwd > 0) ++both_finite;
            if (ix == iy && c.fwd == -1) ++diag_censored;  // diagonal cells
        }
    }
    CHECK(in_region > 100);
    CHECK(both_finite > 0);
    CHECK(diag_censored > 0);  // square window puts cells exactly on x = y
}

TEST_CASE("antidiagonal residual: closed form matches the map composition") {
    detail::Rng rng(11);
    int done = 0;
    while (done < 40) {
        double x = rng.real(-1.8, 1.8);
        if (std::fabs(x) < 0.05) continue;
        double closed;
        try {
            closed = antidiagonal_fixed_residual(x);
        } catch (const PoleOfMap&) {
            continue;
        }
        DOct p(x, -x);
        DOct f;
        try {
            f = t3(t3(p));
        } catch (const PoleOfMap&) {
            continue;
        }
        CHECK(std::fabs((f.x + f.y) - closed) < 1e-10 * std::max(1.0, std::fabs(closed)));
        ++done;
    }
}

TEST_CASE("residual vanishes exactly at the paper root") {
    CHECK(std::fabs(antidiagonal_fixed_residual(xstar())) < 1e-10);
    CHECK(std::fabs(antidiagonal_fixed_residual(0.5)) > 1e-3);
    // exact rational evaluation agrees with t3 o t3 on the antidiagonal
    Rational xq(3, 7);
    QOct p(xq, Rational(-xq));
    QOct f = t3(t3(p));
    CHECK(antidiagonal_fixed_residual(xq) == Rational(f.x + f.y));
}

TEST_CASE("the residual root maps to the pencil base point under f") {
    // f = t3^2 is an order-two translation of the level curve, so it has no
    // fixed points there: the residual root marks the return of (x*, -x*)
    // to the antidiagonal AT THE ORIGIN, the base point of the pencil and
    // an indeterminacy point of the coordinate formula.
    double x = xstar();
    DOct image = t3(t3(DOct(x, -x)));
    CHECK(std::fabs(image.x) < 1e-10);
    CHECK(std::fabs(image.y) < 1e-10);
    CHECK(std::fabs(image.x + image.y) < 1e-10);  // back on y = -x
}

TEST_CASE("f = t3^2 has order two on the level of the residual root") {
    // generic on-curve seeds: f^2 returns them; the map extends through the
    // base point only on the curve itself
    double lam = lambda_star();
    TraceOptions topt;
    topt.resolution = 512;
    auto comps = trace_level_curve(lam, topt);
    REQUIRE(comps.size() == 2);
    int checked = 0;
    for (const auto& c : comps) {
        for (std::size_t frac = 1; frac <= 3; ++frac) {
            auto p = c.polyline[c.polyline.size() * frac / 4];
            for (int it = 0; it < 4; ++it) {
                double v = cubic_value_affine(lam, p[0], p[1]);
                auto g = cubic_gradient_affine(lam, p[0], p[1]);
                double g2 = g[0] * g[0] + g[1] * g[1];
                p[0] -= v * g[0] / g2;
                p[1] -= v * g[1] / g2;
            }
            DOct seed(p[0], p[1]);
            DOct back;
            try {
                DOct once = t3(t3(seed));
                CHECK(std::hypot(once.x - seed.x, once.y - seed.y) > 1e-3);
                back = t3(t3(once));
            } catch (const PoleOfMap&) {
                continue;  // orbit passed through the base point
            }
            CHECK(std::fabs(back.x - seed.x) < 1e-8);
            CHECK(std::fabs(back.y - seed.y) < 1e-8);
            ++checked;
        }
    }
    CHECK(checked >= 4);
}

TEST_CASE("rotation number is 1/2 at the order-two level") {
    double lam = lambda_star();
    TraceOptions topt;
    topt.resolution = 512;
    auto comps = trace_level_curve(lam, topt);
    REQUIRE(comps.size() == 2);
    for (const auto& c : comps) {
        // some seeds land on the base point under f; try a few spots
        bool measured = false;
        for (std::size_t frac = 1; frac <= 5 && !measured; ++frac) {
            auto p = c.polyline[c.polyline.size() * frac / 6];
            for (int it = 0; it < 4; ++it) {
                double v = cubic_value_affine(lam, p[0], p[1]);
                auto g = cubic_gradient_affine(lam, p[0], p[1]);
                double g2 = g[0] * g[0] + g[1] * g[1];
                p[0] -= v * g[0] / g2;
                p[1] -= v * g[1] / g2;
            }
            try {
                auto est = rotation_number_estimate(lam, p, 400, topt);
                CHECK(std::fabs(est.value - 0.5) < 1e-3);
                measured = true;
            } catch (const SeedOffCurve&) {
                continue;
            }
        }
        CHECK(measured);
    }
}

TEST_CASE("rotation number is stable and nonzero at a generic level") {
    TraceOptions topt;
    topt.resolution = 512;
    auto pts = antidiagonal_points(1.2);
    auto est_n = rotation_number_estimate(1.2, {pts[1], -pts[1]}, 300, topt);
    auto est_2n = rotation_number_estimate(1.2, {pts[1], -pts[1]}, 600, topt);
    double diff = std::fabs(est_n.value - est_2n.value);
    CHECK(std::min(diff, 1 - diff) < 1e-3);
    CHECK(est_2n.value > 1e-4);
}

TEST_CASE("rotation number rejects bad input") {
    CHECK_THROWS_AS(rotation_number_estimate(-2.0, {0.5, -0.5}, 100), SingularLevel);
    CHECK_THROWS_AS(rotation_number_estimate(1.0, {2.0, 2.0}, 100), SeedOffCurve);
}

TEST_CASE("circle arc sets: membership and minor decision") {
    CircleArcSet s{{{0.0, 0.4}}};
    CHECK(s.contains(0.2));
    CHECK_FALSE(s.contains(0.4));  // open arcs
    CHECK_FALSE(s.contains(0.9));
    CHECK(s.is_minor());

    CircleArcSet wide{{{0.0, 0.6}}};
    CHECK_FALSE(wide.is_minor());

    CircleArcSet split{{{0.9, 1.1}}};  // wraps through 0
    CHECK(split.contains(0.05));
    CHECK(split.contains(0.95));
    CHECK_FALSE(split.contains(0.5));
    CHECK(split.is_minor());

    CircleArcSet two{{{0.0, 0.2}, {0.3, 0.45}}};
    CHECK(two.is_minor());  // gap [0.45, 1.0] has length 0.55
}

TEST_CASE("minor orbit escape: examples") {
    CircleArcSet s{{{0.0, 0.4}}};
    auto k = minor_orbit_escape(s, 0.3, 0.1, 100);
    REQUIRE(k.has_value());
    CHECK(*k == 1);  // 0.4 is outside the open arc

    CircleArcSet golden{{{0.0, 0.49}}};
    double theta = (std::sqrt(5.0) - 1) / 2;
    auto kg = minor_orbit_escape(golden, theta, 0.2, 100000);
    CHECK(kg.has_value());

    CircleArcSet wide{{{0.0, 0.6}}};
    auto kw = minor_orbit_escape(wide, 0.5, 0.2, 100);
    REQUIRE(kw.has_value());
    CHECK(*kw == 1);  // 0.7 lies outside (0, 0.6)

    CHECK_THROWS_AS(minor_orbit_escape(wide, 0.0, 0.2, 100), InvalidRotation);
    CHECK_THROWS_AS(minor_orbit_escape(wide, 2.0, 0.2, 100), InvalidRotation);
}

TEST_CASE("minor orbit escape is finite over randomized minor sets") {
    detail::Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        double width = rng.real(0.02, 0.49);
        double start = rng.real(0.0, 1.0);
        CircleArcSet s{{{start, start + width}}};
        REQUIRE(s.is_minor());
        double theta = rng.real(0.013, 0.987);
        double p = start + width * rng.real(0.05, 0.95);
        auto k = minor_orbit_escape(s, theta, p, 200000);
        CHECK(k.has_value());
    }
}

// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "pentamap/cubic.hpp"
#include "pentamap/dynamics.hpp"
#include "pentamap/octagon.hpp"
#include "pentamap/polygon.hpp"

using namespace pentamap;

namespace {

using QOct = SymmetricOctagon<Rational>;
using DOct = SymmetricOctagon<double>;

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s  %02d %s%s%s\n", ok ? "PASS" : "FAIL", index, name.c_str(),
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

QOct random_seed(detail::Rng& rng) {
    for (;;) {
        QOct o(rng.rational(1000), rng.rational(1000));
        if (o.x == 0 || o.y == 0 || o.x == o.y || is_degenerate(o)) continue;
        return o;
    }
}

void criterion_1_identities() {
    auto t0 = std::chrono::steady_clock::now();
    detail::Rng rng(20260810);
    int done = 0;
    bool ok = true;
    while (done < 500 && ok) {
        QOct o = random_seed(rng);
        try {
            QOct img = t3(o);
            if (img.x == 0 || img.y == 0 || is_degenerate(img)) continue;
            QOct d = dual_map(o);
            if (d.x == 0 || d.y == 0) continue;
            QOct h1 = half_map(o);
            ok = ok && psi(img) == psi(o);               // Psi o T3 = Psi
            ok = ok && dual_map(d) == o;                 // D o D = id
            ok = ok && dual_map(t3(dual_map(img))) == o; // D T3 D = T3^-1
            ok = ok && sigma2(t3(sigma2(img))) == o;     // s2 T3 s2 = T3^-1
            ok = ok && sigma1(t3(sigma1(o))) == img;     // s1 T3 s1 = T3
            ok = ok && half_map(h1) == img;              // (D o s2)^2 = T3
            ok = ok && psi(h1) == -psi(o);               // Psi o (D o s2) = -Psi
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
    double dt = seconds_since(t0);
    std::ostringstream det;
    det << done << " points, " << dt << " s";
    report(1, "exact identity suite (rational backend)", ok && done == 500 && dt < 10.0,
           det.str());
}

void criterion_2_erratum() {
    detail::Rng rng(777);
    bool ok = true;
    int done = 0;
    while (done < 200) {
        QOct o = random_seed(rng);
        CubicLevel<Rational> level(psi(o));
        ok = ok && cubic_value(level, HomogeneousPoint<Rational>::affine(o.x, o.y)) == 0;
        ++done;
    }
    int line_done = 0, circle_done = 0;
    while (line_done < 50 || circle_done < 50) {
        Rational x = rng.rational(1000);
        if (line_done < 50 && x != 0 && x != 1) {
            ok = ok && psi(QOct(x, Rational(x - 1))) == 2;
            ++line_done;
        }
        Rational t = rng.rational(1000);
        if (circle_done < 50 && t != 0 && t != 1) {
            Rational den(1 + t * t);
            Rational cx((t - 1) / den), cy(Rational(t * (t - 1)) / den);
            if (cx != 0 && cy != 0) {
                ok = ok && psi(QOct(cx, cy)) == 2;
                ++circle_done;
            }
        }
    }
    report(2, "erratum check: V homogenizes psi; psi = 2 on line and circle", ok);
}

void criterion_3_calibration() {
    bool ok = true;
    std::string detail;
    try {
        Calibration cal = calibrate_labeling();
        detail = "shift=" + std::to_string(cal.shift);
    } catch (const Error& e) {
        report(3, "calibration: geometric t3 equals closed form", false, e.what());
        return;
    }
    detail::Rng rng(31337);
    int done = 0;
    double worst = 0;
    while (done < 200) {
        double x = rng.real(-2.0, 2.0), y = rng.real(-2.0, 2.0);
        DOct o(x, y);
        if (is_degenerate(o, 1e-3)) continue;
        try {
            auto c = map_coefficients(o);
            if (std::fabs(c.a_denominator) < 1e-3) continue;
            DOct expect = t3(o);
            if (std::fabs(expect.x) > 1e3 || std::fabs(expect.y) > 1e3) continue;
            DOct got = t3_geometric(o);
            worst = std::max(worst, std::max(std::fabs(got.x - expect.x),
                                             std::fabs(got.y - expect.y)));
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
    ok = worst < 1e-10;
    std::ostringstream det;
    det << detail << ", max error " << worst << " over 200 seeds";
    report(3, "calibration: geometric t3 equals closed form", ok, det.str());
}

void criterion_4_diagonal() {
    const double fixed = 1.0 / std::sqrt(2.0);
    double x = 3.0;
    int steps = 0;
    while (std::fabs(x - fixed) > 1e-12 && steps <= 80) {
        x = diagonal_step(x);
        ++steps;
    }
    bool converged = std::fabs(x - fixed) <= 1e-12 && steps <= 80;

    EscapeTimes et = escape_times(DOct(0.8, 0.8), 1000);
    bool fwd_convex = !et.fwd.has_value();
    bool bwd_exits = et.bwd.has_value() && *et.bwd >= -1000;
    std::ostringstream det;
    det << steps << " steps to fixed point; backward exit at "
        << (et.bwd ? *et.bwd : 0);
    report(4, "diagonal dynamics", converged && fwd_convex && bwd_exits, det.str());
}

void criterion_5_circle() {
    DOct o(std::cos(40.0 * M_PI / 180.0), std::sin(40.0 * M_PI / 180.0));
    EscapeTimes et = escape_times(o, 1000);
    bool ok = !et.bwd.has_value() && et.fwd.has_value() && *et.fwd <= 1000;
    std::ostringstream det;
    det << "forward exit at " << (et.fwd ? *et.fwd : 0);
    report(5, "unit-circle dynamics (stop-sign case)", ok, det.str());
}

void criterion_6_order3() {
    QOct o(Rational(5), Rational(6));
    QOct cur = o;
    bool ok = true;
    try {
        for (int i = 0; i < 3; ++i) cur = t3(t3(cur));
        ok = cur == o;
    } catch (const Error&) {
        ok = false;
    }
    report(6, "order-3 orbit of t3^2 from (5,6) is exact", ok);
}

void criterion_7_singular() {
    bool ok = true;
    for (int i = 0; i <= 10000; ++i) {
        double lam = -5.0 + i * 1e-3;
        bool flagged = is_singular_level(lam).singular;
        bool expected = i == 3000 || i == 5000 || i == 7000;
        if (flagged != expected) {
            ok = false;
            break;
        }
    }
    double v = 4.0 * std::sqrt(2.0);
    ok = ok && is_singular_level(std::complex<double>(0, v)).singular;
    ok = ok && is_singular_level(std::complex<double>(0, -v)).singular;
    ok = ok && !is_singular_level(std::complex<double>(0, v * (1 + 1e-3))).singular;
    report(7, "singularity sweep flags exactly {-2, 0, 2} and +-4i sqrt(2)", ok);
}

void criterion_8_topology() {
    bool ok = true;
    std::ostringstream det;
    for (double lam : {0.5, 1.0, 1.9, -1.0, 3.0}) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<RealCurveComponent> comps;
        try {
            comps = trace_level_curve(lam);  // resolution 2048
        } catch (const Error& e) {
            ok = false;
            det << "lambda=" << lam << " threw; ";
            continue;
        }
        double dt = seconds_since(t0);
        int bounded = 0, unbounded = 0;
        bool cross_ok = true;
        auto expect = antidiagonal_points(lam);
        for (const auto& c : comps) {
            (c.bounded ? bounded : unbounded) += 1;
            std::size_t want = c.bounded ? 2 : 1;
            if (c.l_crossings.size() != want) cross_ok = false;
            for (const auto& pt : c.l_crossings) {
                double best = 1e9;
                for (double e : expect) best = std::min(best, std::fabs(pt[0] - e));
                if (best > 1e-9) cross_ok = false;
            }
        }
        bool this_ok =
            comps.size() == 2 && bounded == 1 && unbounded == 1 && cross_ok && dt < 5.0;
        if (!this_ok) {
            ok = false;
            det << "lambda=" << lam << " comps=" << comps.size() << " t=" << dt << "s; ";
        }
    }
    report(8, "level-curve topology at resolution 2048", ok, det.str());
}

void criterion_9_nontriviality() {
    double x = 0.5 * std::sqrt(0.5 * (1.0 + std::sqrt(17.0)));
    bool residual_ok = std::fabs(antidiagonal_fixed_residual(x)) < 1e-10;

    // f = t3^2 is an order-two translation on the level of the residual
    // root; check f^2 = id and rotation number 1/2 on generic on-curve
    // seeds (the residual root itself maps to the pencil base point, where
    // the coordinate formula is indeterminate).
    double lam = (2 * x) * (2 * x * x - 1) / (-x * x);
    bool f2_ok = true, rot_ok = true;
    int f2_checked = 0;
    auto comps = trace_level_curve(lam);
    for (const auto& c : comps) {
        auto polish = [&](std::array<double, 2> p) {
            for (int it = 0; it < 4; ++it) {
                double v = cubic_value_affine(lam, p[0], p[1]);
                auto g = cubic_gradient_affine(lam, p[0], p[1]);
                double g2 = g[0] * g[0] + g[1] * g[1];
                p[0] -= v * g[0] / g2;
                p[1] -= v * g[1] / g2;
            }
            return p;
        };
        for (std::size_t frac = 1; frac <= 3; ++frac) {
            auto p = polish(c.polyline[c.polyline.size() * frac / 4]);
            DOct seed(p[0], p[1]);
            try {
                DOct back = t3(t3(t3(t3(seed))));
                if (std::fabs(back.x - seed.x) > 1e-8 || std::fabs(back.y - seed.y) > 1e-8)
                    f2_ok = false;
                ++f2_checked;
            } catch (const PoleOfMap&) {
                continue;  // passed through the base point
            }
        }
        bool measured = false;
        for (std::size_t frac = 1; frac <= 5 && !measured; ++frac) {
            try {
                auto est = rotation_number_estimate(
                    lam, polish(c.polyline[c.polyline.size() * frac / 6]), 400);
                if (std::fabs(est.value - 0.5) > 1e-3) rot_ok = false;
                measured = true;
            } catch (const SeedOffCurve&) {
                continue;
            }
        }
        if (!measured) rot_ok = false;
    }
    std::ostringstream det;
    det << "residual=" << std::fabs(antidiagonal_fixed_residual(x)) << " lambda*=" << lam
        << " f2 seeds=" << f2_checked;
    report(9, "nontriviality: residual root, f^2 identity, rotation 1/2",
           residual_ok && f2_ok && rot_ok && f2_checked >= 4, det.str());
}

void criterion_10_escape_scan() {
    auto t0 = std::chrono::steady_clock::now();
    ScanOptions opt;  // [-0.25, 1.25]^2, 128 x 128, cap 10^4
    auto field = escape_scan(opt);
    long checked = 0, bad = 0, diag_cells = 0, diag_censored = 0;
    for (int iy = 0; iy < opt.ny; ++iy) {
        for (int ix = 0; ix < opt.nx; ++ix) {
            const ScanCell& c = field.at(ix, iy);
            if (!c.in_region) continue;
            double r = std::hypot(c.x, c.y);
            bool near_diag = std::fabs(c.x - c.y) <= 1e-3;
            bool near_circle = std::fabs(r - 1.0) <= 1e-3;
            bool near_axis = std::fabs(c.x) <= 1e-3 || std::fabs(c.y) <= 1e-3;
            if (ix == iy) {
                ++diag_cells;  // cell centers sit exactly on the diagonal
                if (c.fwd == -1) ++diag_censored;
            }
            if (near_diag || near_circle || near_axis) continue;
            ++checked;
            if (c.fwd <= 0 || c.bwd <= 0) ++bad;
        }
    }
    // unit-circle censoring probed directly: the grid has no cells exactly
    // on the circle
    bool circle_ok = true;
    for (double deg : {35.0, 40.0, 50.0, 55.0}) {
        DOct o(std::cos(deg * M_PI / 180.0), std::sin(deg * M_PI / 180.0));
        EscapeTimes et = escape_times(o, opt.cap);
        if (et.bwd.has_value() || !et.fwd.has_value()) circle_ok = false;
    }
    double dt = seconds_since(t0);
    bool ok = checked > 5000 && bad == 0 && diag_cells > 0 &&
              diag_censored == diag_cells && circle_ok && dt < 120.0;
    std::ostringstream det;
    det << checked << " cells all double-escaping, " << diag_censored << "/" << diag_cells
        << " diagonal cells forward-censored, " << dt << " s";
    report(10, "escape scan over the convex region", ok, det.str());
}

void criterion_11_classics() {
    detail::Rng rng(2468);
    auto random_convex = [&](std::size_t n) {
        // rejection-sample angle gaps so no two vertices nearly coincide
        std::vector<double> angles(n);
        for (;;) {
            for (auto& a : angles) a = rng.real(0, 2 * M_PI);
            std::sort(angles.begin(), angles.end());
            double min_gap = 2 * M_PI - angles.back() + angles.front();
            for (std::size_t i = 0; i + 1 < n; ++i)
                min_gap = std::min(min_gap, angles[i + 1] - angles[i]);
            if (min_gap > 0.15) break;
        }
        Polygon<double> p;
        for (double t : angles)
            p.vertices.push_back(HomogeneousPoint<double>::affine(std::cos(t), std::sin(t)));
        ProjectiveMap<double> m = ProjectiveMap<double>::identity();
        m.m[0][2] = rng.real(-0.2, 0.2);
        m.m[1][2] = rng.real(-0.2, 0.2);
        m.m[2][0] = rng.real(-0.1, 0.1);
        m.m[2][1] = rng.real(-0.1, 0.1);
        return apply_map(m, p);
    };
    int pentagons = 0, hexagons = 0;
    bool ok = true;
    while (pentagons < 50 && ok) {
        auto p = random_convex(5);
        try {
            ok = projectively_equivalent(p, deep_diagonal(p, 2), 1e-8);
            ++pentagons;
        } catch (const DegenerateInput&) {
            continue;
        }
    }
    while (hexagons < 50 && ok) {
        auto p = random_convex(6);
        try {
            ok = projectively_equivalent(p, deep_diagonal(deep_diagonal(p, 2), 2), 1e-8);
            ++hexagons;
        } catch (const DegenerateInput&) {
            continue;
        }
    }
    report(11, "pentagram classics: T2 pentagons, T2^2 hexagons", ok);
}

void criterion_12_poncelet() {
    bool ok = true;
    std::ostringstream det;
    try {
        auto family = [](double r) { return circle(0.1, 0.0, r); };
        auto res = poncelet_polygon(circle(0, 0, 1), 8, 0.3, family, 0.2, 0.89);
        bool closed = std::fabs(res.defect) < 1e-10;
        bool equivalent =
            projectively_equivalent(res.polygon, deep_diagonal(res.polygon, 3), 1e-8);
        ok = closed && equivalent;
        det << "inner radius " << res.parameter << ", defect " << res.defect;
    } catch (const Error& e) {
        ok = false;
        det << e.what();
    }
    report(12, "Poncelet octagon is t3-self-equivalent", ok, det.str());
}

}  // namespace

int main() {
    criterion_1_identities();
    criterion_2_erratum();
    criterion_3_calibration();
    criterion_4_diagonal();
    criterion_5_circle();
    criterion_6_order3();
    criterion_7_singular();
    criterion_8_topology();
    criterion_9_nontriviality();
    criterion_10_escape_scan();
    criterion_11_classics();
    criterion_12_poncelet();
    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all 12 acceptance criteria PASS\n");
    return 0;
}

#include "pentamap/verify.hpp"

#include <cmath>
#include <sstream>

#include "pentamap/cubic.hpp"
#include "pentamap/dynamics.hpp"
#include "pentamap/octagon.hpp"
#include "pentamap/polygon.hpp"

namespace pentamap {

namespace {

using QOct = SymmetricOctagon<Rational>;

QOct random_rational_seed(detail::Rng& rng) {
    for (;;) {
        QOct o(rng.rational(1000), rng.rational(1000));
        if (o.x == 0 || o.y == 0 || o.x == o.y) continue;
        if (is_degenerate(o)) continue;
        return o;
    }
}

struct Tally {
    long trials = 0;
    long failures = 0;

    void count(bool ok) {
        ++trials;
        if (!ok) ++failures;
    }
};

CheckResult make_result(const std::string& name, const Tally& t,
                        const std::string& detail = "") {
    CheckResult r;
    r.name = name;
    r.trials = t.trials;
    r.failures = t.failures;
    r.passed = t.failures == 0 && t.trials > 0;
    r.detail = detail;
    return r;
}

void run_identities(std::vector<CheckResult>& out, long trials, std::uint64_t seed) {
    detail::Rng rng(seed);
    Tally psi_t3, dd, d_conj, s2_conj, s1_conj, fact, half_psi, erratum;
    long done = 0;
    while (done < trials) {
        QOct o = random_rational_seed(rng);
        try {
            QOct img = t3(o);
            if (img.x == 0 || img.y == 0 || is_degenerate(img)) continue;
            QOct d = dual_map(o);
            if (d.x == 0 || d.y == 0) continue;
            QOct h1 = half_map(o);
            QOct double_dual = dual_map(d);
            QOct h2 = half_map(h1);
            QOct via_dual = dual_map(t3(dual_map(img)));
            QOct via_sigma2 = sigma2(t3(sigma2(img)));
            QOct commuted = sigma1(t3(sigma1(o)));
            Rational psi_o = psi(o);
            Rational psi_img = psi(img);
            Rational psi_h1 = psi(h1);
            CubicLevel<Rational> level(psi_o);
            Rational v = cubic_value(level, HomogeneousPoint<Rational>::affine(o.x, o.y));

            psi_t3.count(psi_img == psi_o);
            dd.count(double_dual == o);
            d_conj.count(via_dual == o);
            s2_conj.count(via_sigma2 == o);
            s1_conj.count(commuted == img);
            fact.count(h2 == img);
            half_psi.count(psi_h1 == -psi_o);
            erratum.count(v == 0);
            ++done;
        } catch (const Error&) {
            continue;  // pole somewhere along a composite route
        }
    }
    out.push_back(make_result("identities.psi_compose_t3", psi_t3));
    out.push_back(make_result("identities.dual_involution", dd));
    out.push_back(make_result("identities.dual_conjugates_to_inverse", d_conj));
    out.push_back(make_result("identities.sigma2_conjugates_to_inverse", s2_conj));
    out.push_back(make_result("identities.sigma1_commutes", s1_conj));
    out.push_back(make_result("identities.half_map_squares_to_t3", fact));
    out.push_back(make_result("identities.psi_flips_under_half_map", half_psi));
    out.push_back(make_result("identities.cubic_is_psi_homogenization", erratum));
}

void run_cubic(std::vector<CheckResult>& out, long trials, std::uint64_t seed) {
    (void)trials;
    (void)seed;
    // Singular sweep: 10^4 + 1 samples stepping 1e-3 over [-5, 5].
    Tally sweep;
    {
        bool ok = true;
        for (int i = 0; i <= 10000; ++i) {
            double lam = -5.0 + i * 1e-3;
            bool flagged = is_singular_level(lam).singular;
            bool expected = (i == 3000 || i == 5000 || i == 7000);
            if (flagged != expected) ok = false;
        }
        sweep.count(ok);
    }
    out.push_back(make_result("cubic.real_singular_sweep", sweep));

    Tally complex_pair;
    {
        double v = 4.0 * std::sqrt(2.0);
        bool pos = is_singular_level(std::complex<double>(0, v)).singular;
        bool neg = is_singular_level(std::complex<double>(0, -v)).singular;
        bool off = is_singular_level(std::complex<double>(0, v + 1e-3)).singular;
        complex_pair.count(pos && neg && !off);
    }
    out.push_back(make_result("cubic.complex_singular_pair", complex_pair));

    Tally topo;
    std::ostringstream topo_detail;
    for (double lam : {1.0, 1.9, -1.0, 0.5, 3.0}) {
        bool ok = true;
        try {
            auto comps = trace_level_curve(lam);
            long bounded = 0, unbounded = 0;
            std::size_t bounded_cross = 0, unbounded_cross = 0;
            for (const auto& c : comps) {
                if (c.bounded) {
                    ++bounded;
                    bounded_cross = c.l_crossings.size();
                } else {
                    ++unbounded;
                    unbounded_cross = c.l_crossings.size();
                }
            }
            ok = comps.size() == 2 && bounded == 1 && unbounded == 1 &&
                 bounded_cross == 2 && unbounded_cross == 1;
        } catch (const Error&) {
            ok = false;
        }
        topo.count(ok);
        if (!ok) topo_detail << "lambda=" << lam << " ";
    }
    out.push_back(make_result("cubic.two_components_2_1_crossings", topo, topo_detail.str()));
}

void run_escape(std::vector<CheckResult>& out, long trials, std::uint64_t seed) {
    Tally diagonal, circle, generic, order3, minor;
    {
        EscapeTimes et = escape_times(SymmetricOctagon<double>(0.8, 0.8), 1000);
        diagonal.count(!et.fwd && et.bwd.has_value());
    }
    out.push_back(make_result("escape.diagonal_forward_convex", diagonal));
    {
        double c = std::cos(40.0 * M_PI / 180.0), s = std::sin(40.0 * M_PI / 180.0);
        EscapeTimes et = escape_times(SymmetricOctagon<double>(c, s), 1000);
        circle.count(!et.bwd && et.fwd.has_value());
    }
    out.push_back(make_result("escape.circle_backward_convex", circle));
    {
        EscapeTimes et = escape_times(SymmetricOctagon<double>(0.75, 0.60), 10000);
        generic.count(et.fwd.has_value() && et.bwd.has_value());
    }
    out.push_back(make_result("escape.generic_double_sided", generic));
    {
        QOct o(Rational(5), Rational(6));
        QOct cur = o;
        bool ok = true;
        try {
            for (int i = 0; i < 6; ++i) cur = t3(cur);
            ok = cur == o;
        } catch (const PoleOfMap&) {
            ok = false;
        }
        order3.count(ok);
    }
    out.push_back(make_result("escape.order3_special_orbit", order3));
    {
        detail::Rng rng(seed ^ 0xabcdefull);
        bool ok = true;
        long n = trials > 0 ? trials : 100;
        for (long t = 0; t < n; ++t) {
            double width = rng.real(0.05, 0.49);
            double start = rng.real(0.0, 1.0);
            CircleArcSet s{{{start, start + width}}};
            double theta = rng.real(0.01, 0.99);
            if (std::fabs(theta) < 1e-6) theta = 0.3;
            double p = start + rng.real(0.0, 1.0) * width;
            auto k = minor_orbit_escape(s, theta, p, 100000);
            if (!k) ok = false;
        }
        minor.count(ok);
    }
    out.push_back(make_result("escape.minor_arc_orbit_escapes", minor));
}

void run_poncelet(std::vector<CheckResult>& out, long, std::uint64_t) {
    Tally concentric, offcenter, equivalence;
    {
        // Concentric circles, n = 8: closure at inner radius cos(pi/8).
        bool ok = true;
        try {
            auto family = [](double r) { return circle(0.0, 0.0, r); };
            auto res = poncelet_polygon(circle(0, 0, 1), 8, 0.3, family, 0.2, 0.99);
            ok = std::fabs(res.parameter - std::cos(M_PI / 8)) < 1e-9 &&
                 std::fabs(res.defect) < 1e-10;
        } catch (const Error&) {
            ok = false;
        }
        concentric.count(ok);
    }
    out.push_back(make_result("poncelet.concentric_octagon_radius", concentric));

    PonceletResult off;
    bool have_off = false;
    {
        bool ok = true;
        try {
            auto family = [](double r) { return circle(0.1, 0.0, r); };
            off = poncelet_polygon(circle(0, 0, 1), 8, 0.3, family, 0.2, 0.89);
            have_off = true;
            ok = std::fabs(off.defect) < 1e-10;
        } catch (const Error&) {
            ok = false;
        }
        offcenter.count(ok);
    }
    out.push_back(make_result("poncelet.offcenter_octagon_closure", offcenter));
    {
        bool ok = false;
        if (have_off) {
            try {
                Polygon<double> image = deep_diagonal(off.polygon, 3);
                ok = projectively_equivalent(off.polygon, image, 1e-8);
            } catch (const Error&) {
                ok = false;
            }
        }
        equivalence.count(ok);
    }
    out.push_back(make_result("poncelet.t3_image_projectively_equivalent", equivalence));
}

void run_calibration(std::vector<CheckResult>& out, long trials, std::uint64_t seed) {
    Tally frozen, agreement;
    {
        bool ok = true;
        try {
            Calibration cal = calibrate_labeling();
            ok = cal.shift == kCalibratedShift && cal.reversed == kCalibratedReversed;
        } catch (const Error&) {
            ok = false;
        }
        frozen.count(ok);
    }
    out.push_back(make_result("calibration.frozen_labeling_constants", frozen));
    {
        detail::Rng rng(seed ^ 0x5eedull);
        long n = trials > 0 ? trials : 200;
        long done = 0;
        bool ok = true;
        double worst = 0;
        while (done < n) {
            double x = rng.real(-2.0, 2.0), y = rng.real(-2.0, 2.0);
            SymmetricOctagon<double> o(x, y);
            if (is_degenerate(o, 1e-3)) continue;
            try {
                auto c = map_coefficients(o);
                if (std::fabs(c.a_denominator) < 1e-3) continue;
                auto expect = t3(o);
                if (std::fabs(expect.x) > 1e3 || std::fabs(expect.y) > 1e3) continue;
                auto got = t3_geometric(o);
                double err = std::max(std::fabs(got.x - expect.x),
                                      std::fabs(got.y - expect.y));
                worst = std::max(worst, err);
                if (err > 1e-10) ok = false;
                ++done;
            } catch (const Error&) {
                continue;
            }
        }
        agreement.count(ok);
        std::ostringstream det;
        det << "max |geometric - closed form| = " << worst;
        out.push_back(make_result("calibration.geometric_matches_closed_form", agreement,
                                  det.str()));
    }
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite, long trials,
                                          std::uint64_t rng_seed) {
    std::vector<CheckResult> out;
    bool all = suite == "all";
    bool known = all;
    if (all || suite == "identities") {
        run_identities(out, trials > 0 ? trials : 500, rng_seed);
        known = true;
    }
    if (all || suite == "cubic") {
        run_cubic(out, trials, rng_seed);
        known = true;
    }
    if (all || suite == "escape") {
        run_escape(out, trials, rng_seed);
        known = true;
    }
    if (all || suite == "poncelet") {
        run_poncelet(out, trials, rng_seed);
        known = true;
    }
    if (all || suite == "calibration") {
        run_calibration(out, trials, rng_seed);
        known = true;
    }
    if (!known) throw Error("unknown verify suite: " + suite);
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

}  // namespace pentamap

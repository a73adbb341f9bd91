#include "pentamap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace pentamap {

namespace {

bool params_close(const SymmetricOctagon<double>& a, const SymmetricOctagon<double>& b,
                  double tol) {
    double scale = std::max({1.0, std::fabs(a.x), std::fabs(a.y)});
    return std::fabs(a.x - b.x) <= tol * scale && std::fabs(a.y - b.y) <= tol * scale;
}

}  // namespace

EscapeTimes escape_times(const SymmetricOctagon<double>& seed, long cap, double pole_tol) {
    if (is_degenerate(seed)) throw DegenerateInput("degenerate scan seed");
    EscapeTimes out;

    // The regular octagon is a saddle of the planar map (transverse
    // multiplier -(1+sqrt2)^2), so raw iteration amplifies the seed's
    // representation error off the invariant sets. Convex numerical fixed
    // points therefore get the constant orbit they stand for, and seeds on
    // the invariant unit circle are re-projected onto it each step; the
    // diagonal needs nothing, the closed form preserves x = y exactly.
    bool convex_seed;
    try {
        convex_seed = is_convex_octagon(seed);
    } catch (const DegenerateInput&) {
        convex_seed = false;
    }
    try {
        if (convex_seed && params_close(t3(seed, pole_tol), seed, 1e-13) &&
            params_close(t3_inverse(seed, pole_tol), seed, 1e-13))
            return out;  // constant convex orbit: censored both ways
    } catch (const PoleOfMap&) {
    }
    const bool on_circle = std::fabs(seed.x * seed.x + seed.y * seed.y - 1.0) <= 1e-14;

    for (int dir = 0; dir < 2; ++dir) {
        SymmetricOctagon<double> o = seed;
        std::optional<long>& slot = dir == 0 ? out.fwd : out.bwd;
        for (long j = 1; j <= cap; ++j) {
            bool dead = false;
            try {
                o = dir == 0 ? t3(o, pole_tol) : t3_inverse(o, pole_tol);
                if (on_circle) {
                    double r = std::hypot(o.x, o.y);
                    if (r > 0) {
                        o.x /= r;
                        o.y /= r;
                    }
                }
                dead = is_degenerate(o, 1e-12);
            } catch (const PoleOfMap&) {
                dead = true;
            }
            bool convex = false;
            if (!dead) {
                try {
                    convex = is_convex_octagon(o);
                } catch (const DegenerateInput&) {
                    convex = false;
                }
            }
            if (dead || !convex) {
                slot = dir == 0 ? j : -j;
                break;
            }
        }
    }
    return out;
}

ScanField escape_scan(const ScanOptions& opt) {
    ScanField field;
    field.opt = opt;
    field.cells.resize(static_cast<std::size_t>(opt.nx) * opt.ny);

    auto run_rows = [&](int row_begin, int row_end) {
        for (int iy = row_begin; iy < row_end; ++iy) {
            double y = opt.y0 + (iy + 0.5) * (opt.y1 - opt.y0) / opt.ny;
            for (int ix = 0; ix < opt.nx; ++ix) {
                double x = opt.x0 + (ix + 0.5) * (opt.x1 - opt.x0) / opt.nx;
                ScanCell& cell = field.cells[static_cast<std::size_t>(iy) * opt.nx + ix];
                cell.x = x;
                cell.y = y;
                SymmetricOctagon<double> o(x, y);
                bool convex = false;
                if (!is_degenerate(o)) {
                    try {
                        convex = is_convex_octagon(o);
                    } catch (const DegenerateInput&) {
                        convex = false;
                    }
                }
                cell.in_region = convex;
                if (!convex) {
                    cell.fwd = 0;
                    cell.bwd = 0;
                    continue;
                }
                EscapeTimes et = escape_times(o, opt.cap);
                cell.fwd = et.fwd ? *et.fwd : -1;
                cell.bwd = et.bwd ? -*et.bwd : -1;
            }
        }
    };

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(opt.ny));
    std::vector<std::future<void>> futs;
    int rows_per = (opt.ny + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned w = 0; w < workers; ++w) {
        int lo = static_cast<int>(w) * rows_per;
        int hi = std::min(opt.ny, lo + rows_per);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, run_rows, lo, hi));
    }
    for (auto& f : futs) f.get();
    return field;
}

namespace {

// Cyclic arc-length coordinate on a component polyline in [0, 1).
struct CycleParam {
    std::vector<std::array<double, 2>> pts;  // without the closing repeat
    std::vector<double> cum;                 // cumulative length at each point
    double total = 0;

    explicit CycleParam(const RealCurveComponent& comp) {
        pts = comp.polyline;
        if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
        cum.resize(pts.size());
        double acc = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            cum[i] = acc;
            const auto& a = pts[i];
            const auto& b = pts[(i + 1) % pts.size()];
            acc += std::hypot(b[0] - a[0], b[1] - a[1]);
        }
        total = acc;
    }

    // Projects onto the nearest polyline segment and returns its cyclic
    // parameter, plus the squared distance.
    std::pair<double, double> locate(const std::array<double, 2>& q) const {
        double best_d2 = 1e300, best_s = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& a = pts[i];
            const auto& b = pts[(i + 1) % pts.size()];
            double vx = b[0] - a[0], vy = b[1] - a[1];
            double len2 = vx * vx + vy * vy;
            double t = 0;
            if (len2 > 0)
                t = std::clamp(((q[0] - a[0]) * vx + (q[1] - a[1]) * vy) / len2, 0.0, 1.0);
            double px = a[0] + t * vx - q[0], py = a[1] + t * vy - q[1];
            double d2 = px * px + py * py;
            if (d2 < best_d2) {
                best_d2 = d2;
                best_s = cum[i] + t * std::sqrt(len2);
            }
        }
        return {best_s / total, best_d2};
    }
};

double wrap01(double v) {
    v = std::fmod(v, 1.0);
    return v < 0 ? v + 1 : v;
}

}  // namespace

RotationEstimate rotation_number_estimate(double lambda, std::array<double, 2> seed,
                                          long n, const TraceOptions& topt) {
    for (double s : {-2.0, 0.0, 2.0})
        if (std::fabs(lambda - s) < topt.singular_guard)
            throw SingularLevel("lambda within guard of the singular set {-2, 0, 2}");
    if (std::fabs(cubic_value_affine(lambda, seed[0], seed[1])) > 1e-6)
        throw SeedOffCurve("|V| at seed exceeds 1e-6");
    auto comps = trace_level_curve(lambda, topt);

    std::size_t ci = 0;
    double best = 1e300;
    std::vector<CycleParam> params;
    params.reserve(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        params.emplace_back(comps[i]);
        auto [s, d2] = params[i].locate(seed);
        (void)s;
        if (d2 < best) {
            best = d2;
            ci = i;
        }
    }
    const CycleParam& cp = params[ci];

    // f = t3^2 preserves each component; accumulate forward displacements of
    // the cyclic parameter.
    SymmetricOctagon<double> o(seed[0], seed[1]);
    double s_prev = cp.locate(seed).first;
    double sum = 0, sum_half = 0;
    long done = 0;
    for (long i = 1; i <= n; ++i) {
        try {
            o = t3(t3(o));
        } catch (const PoleOfMap&) {
            break;
        }
        double s_cur = cp.locate({o.x, o.y}).first;
        sum += wrap01(s_cur - s_prev);
        s_prev = s_cur;
        done = i;
        if (i == n / 2) sum_half = sum;
    }
    if (done < 4) throw SeedOffCurve("orbit left the traced component almost immediately");

    RotationEstimate est;
    est.component = ci;
    est.iterations = static_cast<std::size_t>(done);
    est.value = wrap01(sum / static_cast<double>(done));
    if (done / 2 > 0) {
        double half = wrap01(sum_half / static_cast<double>(done / 2));
        double diff = std::fabs(est.value - half);
        est.convergence = std::min(diff, 1.0 - diff);
    }
    return est;
}

bool CircleArcSet::contains(double p) const {
    p = wrap01(p);
    for (const auto& [lo, hi] : arcs) {
        double a = wrap01(lo), b = wrap01(hi);
        if (a <= b) {
            if (p > a && p < b) return true;
        } else {
            if (p > a || p < b) return true;  // arc wraps through 0
        }
    }
    return false;
}

bool CircleArcSet::is_minor() const {
    if (arcs.empty()) return true;
    // Largest complementary gap >= 1/2 means a rotation fits S into (0,1/2).
    std::vector<std::pair<double, double>> norm;
    for (const auto& [lo, hi] : arcs) norm.emplace_back(wrap01(lo), wrap01(hi));
    std::sort(norm.begin(), norm.end());
    double max_gap = 0;
    for (std::size_t i = 0; i < norm.size(); ++i) {
        double end = norm[i].second;
        double next = i + 1 < norm.size() ? norm[i + 1].first : norm[0].first + 1.0;
        max_gap = std::max(max_gap, next - end);
    }
    return max_gap >= 0.5;
}

std::optional<long> minor_orbit_escape(const CircleArcSet& s, double theta, double p,
                                       long cap) {
    double w = wrap01(theta);
    if (w < 1e-15 || w > 1.0 - 1e-15) throw InvalidRotation();
    double q = wrap01(p);
    for (long k = 1; k <= cap; ++k) {
        q = wrap01(q + theta);
        if (!s.contains(q)) return k;
    }
    return std::nullopt;
}

}  // namespace pentamap

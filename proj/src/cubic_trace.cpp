#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "pentamap/cubic.hpp"

namespace pentamap {

double cubic_value_affine(double lambda, double x, double y) {
    return x * x * x - y * y * y - x * x * y + x * y * y - x + y - lambda * x * y;
}

std::array<double, 2> cubic_gradient_affine(double lambda, double x, double y) {
    return {-lambda * y + 3 * x * x - 2 * x * y + y * y - 1,
            -lambda * x - x * x + 2 * x * y - 3 * y * y + 1};
}

SingularityResult is_singular_level(std::complex<double> lambda, double window) {
    using C = std::complex<double>;
    SingularityResult res;
    auto set_witness = [&](C x, C y, C z) {
        res.singular = true;
        res.witness = {x, y, z};
    };

    if (std::abs(lambda) < window) {
        // E_0 = {x = y} u {x^2 + y^2 = z^2}; singular at the intersections.
        set_witness(C(1 / std::sqrt(2.0)), C(1 / std::sqrt(2.0)), C(1));
        return res;
    }
    // Branch y = (2x - lambda)/2: V is constant lambda(4 - lambda^2)/8 there.
    if (std::abs(lambda * (4.0 - lambda * lambda)) / 8.0 < window) {
        // lambda = +-2: the level is a line and a circle; their (complex)
        // intersections are the singular points. Solve V_x = 0 on the line:
        //   V_x(x, x - lambda/2, 1) = 2 x^2 - lambda x + 3 lambda^2 / 4 - 1.
        C a(2), b = -lambda, c = 3.0 * lambda * lambda / 4.0 - 1.0;
        C disc = std::sqrt(b * b - 4.0 * a * c);
        C x = (-b + disc) / (2.0 * a);
        set_witness(x, x - lambda / 2.0, C(1));
        return res;
    }
    // Branch y = -x: gradient vanishes only at x = 4/lambda, where
    // V = 256/lambda^3 + 8/lambda; zero iff lambda = +-4i sqrt(2).
    if (std::abs(256.0 / (lambda * lambda * lambda) + 8.0 / lambda) < window) {
        set_witness(4.0 / lambda, -4.0 / lambda, C(1));
        return res;
    }
    return res;
}

std::array<double, 3> antidiagonal_points(double lambda) {
    double disc = std::sqrt(lambda * lambda + 32.0);
    return {0.0, (-lambda + disc) / 8.0, (-lambda - disc) / 8.0};
}

namespace {

struct Segment {
    // Endpoints keyed by grid-edge id so linking is exact.
    std::uint64_t key[2];
    std::array<double, 2> pt[2];
};

// Grid edge id: horizontal edges (between (i,j) and (i+1,j)) and vertical
// edges (between (i,j) and (i,j+1)).
inline std::uint64_t edge_key(int i, int j, bool vertical) {
    return (static_cast<std::uint64_t>(vertical) << 63) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 31) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(j));
}

void newton_polish(double lambda, std::array<double, 2>& p, int iters) {
    for (int it = 0; it < iters; ++it) {
        double v = cubic_value_affine(lambda, p[0], p[1]);
        auto g = cubic_gradient_affine(lambda, p[0], p[1]);
        double g2 = g[0] * g[0] + g[1] * g[1];
        if (g2 < 1e-18) break;
        p[0] -= v * g[0] / g2;
        p[1] -= v * g[1] / g2;
    }
}

// Antidiagonal crossings: find sign changes of x + y along the polyline,
// then solve V(x, -x, 1) = x (4x^2 + lambda x - 2) = 0 from the bracketing
// estimate with Newton.
std::vector<std::array<double, 2>> find_l_crossings(
    double lambda, const std::vector<std::array<double, 2>>& poly, bool closed) {
    std::vector<double> xs;
    const std::size_t n = poly.size();
    if (n < 2) return {};
    const std::size_t limit = closed ? n : n - 1;
    for (std::size_t i = 0; i < limit; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        double fa = a[0] + a[1], fb = b[0] + b[1];
        if (fa == 0.0) {
            xs.push_back(a[0]);
            continue;
        }
        if ((fa > 0) == (fb > 0)) continue;
        double t = fa / (fa - fb);
        double x = a[0] + t * (b[0] - a[0]);
        // 1-D Newton on g(x) = 4x^3 + lambda x^2 - 2x
        for (int it = 0; it < 30; ++it) {
            double g = x * (4 * x * x + lambda * x - 2);
            double dg = 12 * x * x + 2 * lambda * x - 2;
            if (std::fabs(dg) < 1e-14) break;
            double step = g / dg;
            x -= step;
            if (std::fabs(step) < 1e-15) break;
        }
        xs.push_back(x);
    }
    // Deduplicate nearly-equal crossings (polyline may graze the line).
    std::sort(xs.begin(), xs.end());
    std::vector<std::array<double, 2>> out;
    for (double x : xs) {
        if (!out.empty() && std::fabs(out.back()[0] - x) < 1e-7) continue;
        out.push_back({x, -x});
    }
    return out;
}

}  // namespace

std::vector<RealCurveComponent> trace_level_curve(double lambda, const TraceOptions& opt) {
    for (double s : {-2.0, 0.0, 2.0})
        if (std::fabs(lambda - s) < opt.singular_guard)
            throw SingularLevel("lambda within guard of the singular set {-2, 0, 2}");
    if (opt.resolution < 256) throw ResolutionTooCoarse("resolution must be >= 256");

    const int n = opt.resolution;
    const double r = opt.window;
    const double h = 2 * r / n;
    auto coord = [&](int i) { return -r + i * h; };

    // Sample V on the (n+1)^2 grid.
    std::vector<double> val(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j) {
        double y = coord(j);
        double* row = val.data() + static_cast<std::size_t>(j) * (n + 1);
        for (int i = 0; i <= n; ++i) row[i] = cubic_value_affine(lambda, coord(i), y);
    }
    auto v_at = [&](int i, int j) { return val[static_cast<std::size_t>(j) * (n + 1) + i]; };

    // Marching squares: one interpolated point per sign-change edge.
    auto interp = [&](int i0, int j0, int i1, int j1) -> std::array<double, 2> {
        double f0 = v_at(i0, j0), f1 = v_at(i1, j1);
        double t = f0 / (f0 - f1);
        return {coord(i0) + t * (coord(i1) - coord(i0)),
                coord(j0) + t * (coord(j1) - coord(j0))};
    };

    std::vector<Segment> segments;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            double f00 = v_at(i, j), f10 = v_at(i + 1, j);
            double f01 = v_at(i, j + 1), f11 = v_at(i + 1, j + 1);
            int code = (f00 > 0 ? 1 : 0) | (f10 > 0 ? 2 : 0) | (f11 > 0 ? 4 : 0) |
                       (f01 > 0 ? 8 : 0);
            if (code == 0 || code == 15) continue;

            // Edge ids and crossing points: bottom, right, top, left.
            std::uint64_t kb = edge_key(i, j, false), kr = edge_key(i + 1, j, true);
            std::uint64_t kt = edge_key(i, j + 1, false), kl = edge_key(i, j, true);
            auto pb = [&] { return interp(i, j, i + 1, j); };
            auto pr = [&] { return interp(i + 1, j, i + 1, j + 1); };
            auto pt = [&] { return interp(i, j + 1, i + 1, j + 1); };
            auto pl = [&] { return interp(i, j, i, j + 1); };
            auto add = [&](std::uint64_t ka, std::array<double, 2> a, std::uint64_t kc,
                           std::array<double, 2> c) {
                segments.push_back(Segment{{ka, kc}, {a, c}});
            };

            switch (code) {
                case 1: case 14: add(kl, pl(), kb, pb()); break;
                case 2: case 13: add(kb, pb(), kr, pr()); break;
                case 3: case 12: add(kl, pl(), kr, pr()); break;
                case 4: case 11: add(kr, pr(), kt, pt()); break;
                case 6: case 9:  add(kb, pb(), kt, pt()); break;
                case 7: case 8:  add(kl, pl(), kt, pt()); break;
                case 5: case 10: {
                    // Saddle: disambiguate with the center sign.
                    double fc = cubic_value_affine(lambda, coord(i) + h / 2, coord(j) + h / 2);
                    bool center_pos = fc > 0;
                    bool corner_pos = code == 5;  // f00 and f11 positive
                    if (center_pos == corner_pos) {
                        add(kl, pl(), kt, pt());
                        add(kb, pb(), kr, pr());
                    } else {
                        add(kl, pl(), kb, pb());
                        add(kr, pr(), kt, pt());
                    }
                    break;
                }
                default: break;
            }
        }
    }
    if (segments.empty())
        throw ResolutionTooCoarse("no level-curve segments found in window");

    // Link segments into chains via shared grid-edge nodes.
    std::unordered_map<std::uint64_t, std::array<int, 2>> node_segs;
    node_segs.reserve(segments.size() * 2);
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        for (int e = 0; e < 2; ++e) {
            auto [it, fresh] = node_segs.try_emplace(segments[s].key[e],
                                                     std::array<int, 2>{-1, -1});
            auto& slot = it->second;
            (void)fresh;
            if (slot[0] < 0)
                slot[0] = s;
            else if (slot[1] < 0)
                slot[1] = s;
            else
                throw ResolutionTooCoarse("ambiguous component linking at grid edge");
        }
    }

    std::vector<char> used(segments.size(), 0);
    struct Chain {
        std::vector<std::array<double, 2>> pts;
        bool closed = false;
    };
    std::vector<Chain> chains;

    auto walk = [&](int start_seg, std::uint64_t start_node) {
        Chain ch;
        int seg = start_seg;
        std::uint64_t node = start_node;
        while (seg >= 0 && !used[seg]) {
            used[seg] = 1;
            const Segment& sg = segments[seg];
            int from = sg.key[0] == node ? 0 : 1;
            if (ch.pts.empty()) ch.pts.push_back(sg.pt[from]);
            int to = 1 - from;
            ch.pts.push_back(sg.pt[to]);
            node = sg.key[to];
            auto& slot = node_segs[node];
            int next = slot[0] == seg ? slot[1] : slot[0];
            if (node == start_node) {
                ch.closed = true;
                break;
            }
            seg = next;
        }
        return ch;
    };

    // Open chains first: start from nodes of degree 1 (window-boundary exits).
    for (auto& [node, slot] : node_segs) {
        if (slot[1] >= 0) continue;
        int s = slot[0];
        if (used[s]) continue;
        chains.push_back(walk(s, node));
    }
    // Remaining segments belong to closed loops.
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        if (used[s]) continue;
        chains.push_back(walk(s, segments[s].key[0]));
    }

    // Polish every polyline point onto the curve.
    for (auto& ch : chains)
        for (auto& p : ch.pts) newton_polish(lambda, p, 3);

    // Closed chains are the bounded components (degree-3 curves cannot close
    // around the unbounded branch inside the window); open chains belong to
    // the single unbounded component through [1:1:0]. Merge the open chains:
    // the real point at infinity joins the x -> +inf end to the x -> -inf
    // end. Tiny chains are grid noise.
    std::vector<RealCurveComponent> out;
    const double edge_margin = 2 * h;
    std::vector<Chain*> open_chains;
    for (auto& ch : chains) {
        if (ch.pts.size() < 8) continue;
        if (ch.closed) {
            RealCurveComponent comp;
            comp.bounded = true;
            comp.polyline = ch.pts;
            // Bounded loops must close well inside the window.
            for (const auto& p : comp.polyline)
                if (std::max(std::fabs(p[0]), std::fabs(p[1])) > r - edge_margin)
                    throw ResolutionTooCoarse("closed component touches the window edge");
            comp.l_crossings = find_l_crossings(lambda, comp.polyline, true);
            out.push_back(std::move(comp));
        } else {
            open_chains.push_back(&ch);
        }
    }

    if (!open_chains.empty()) {
        RealCurveComponent comp;
        comp.bounded = false;
        if (open_chains.size() == 1) {
            comp.polyline = open_chains[0]->pts;
        } else {
            // Orient every chain to run toward increasing x and concatenate
            // negative-exit chains after positive-exit ones; adequate for
            // crossing counts and rho-symmetry checks.
            for (auto* ch : open_chains) {
                if (ch->pts.front()[0] > ch->pts.back()[0])
                    std::reverse(ch->pts.begin(), ch->pts.end());
            }
            std::sort(open_chains.begin(), open_chains.end(),
                      [](const Chain* a, const Chain* b) {
                          return a->pts.front()[0] < b->pts.front()[0];
                      });
            for (auto* ch : open_chains)
                comp.polyline.insert(comp.polyline.end(), ch->pts.begin(), ch->pts.end());
        }
        comp.l_crossings = find_l_crossings(lambda, comp.polyline, false);
        out.push_back(std::move(comp));
    }

    // Bounded components before the unbounded one, largest first.
    std::sort(out.begin(), out.end(), [](const RealCurveComponent& a,
                                         const RealCurveComponent& b) {
        if (a.bounded != b.bounded) return a.bounded;
        return a.polyline.size() > b.polyline.size();
    });
    return out;
}

}  // namespace pentamap

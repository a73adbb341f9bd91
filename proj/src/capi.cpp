#include "pentamap.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "pentamap/cubic.hpp"
#include "pentamap/dynamics.hpp"
#include "pentamap/octagon.hpp"
#include "pentamap/polygon.hpp"
#include "pentamap/verify.hpp"

using namespace pentamap;

namespace {

pentamap_status status_of(const std::exception& e) {
    if (dynamic_cast<const PoleOfMap*>(&e)) return PENTAMAP_ERR_POLE;
    if (dynamic_cast<const UndefinedOnAxes*>(&e)) return PENTAMAP_ERR_UNDEFINED;
    if (dynamic_cast<const DegenerateInput*>(&e)) return PENTAMAP_ERR_DEGENERATE;
    if (dynamic_cast<const SingularLevel*>(&e)) return PENTAMAP_ERR_SINGULAR;
    if (dynamic_cast<const NoClosure*>(&e)) return PENTAMAP_ERR_NO_CLOSURE;
    if (dynamic_cast<const CalibrationFailed*>(&e)) return PENTAMAP_ERR_CALIBRATION;
    if (dynamic_cast<const Inconclusive*>(&e)) return PENTAMAP_ERR_INCONCLUSIVE;
    if (dynamic_cast<const NotSymmetric*>(&e)) return PENTAMAP_ERR_DEGENERATE;
    if (dynamic_cast<const ResolutionTooCoarse*>(&e)) return PENTAMAP_ERR_BAD_ARG;
    if (dynamic_cast<const SeedOffCurve*>(&e)) return PENTAMAP_ERR_BAD_ARG;
    if (dynamic_cast<const InvalidRotation*>(&e)) return PENTAMAP_ERR_BAD_ARG;
    if (dynamic_cast<const Error*>(&e)) return PENTAMAP_ERR_BAD_ARG;
    return PENTAMAP_ERR_INTERNAL;
}

template <class F>
pentamap_status guarded(F&& f) {
    try {
        f();
        return PENTAMAP_OK;
    } catch (const std::exception& e) {
        return status_of(e);
    } catch (...) {
        return PENTAMAP_ERR_INTERNAL;
    }
}

pentamap_status write_string(const std::string& s, char* out, size_t out_size) {
    if (!out || out_size <= s.size()) return PENTAMAP_ERR_BAD_ARG;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return PENTAMAP_OK;
}

using DOct = SymmetricOctagon<double>;

pentamap_status map2(double x, double y, double* ox, double* oy,
                     DOct (*fn)(const DOct&)) {
    if (!ox || !oy) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        DOct r = fn(DOct(x, y));
        *ox = r.x;
        *oy = r.y;
    });
}

}  // namespace

extern "C" {

const char* pentamap_status_str(pentamap_status status) {
    switch (status) {
        case PENTAMAP_OK: return "ok";
        case PENTAMAP_ERR_DEGENERATE: return "degenerate input";
        case PENTAMAP_ERR_POLE: return "pole of map";
        case PENTAMAP_ERR_UNDEFINED: return "undefined on axes";
        case PENTAMAP_ERR_SINGULAR: return "singular level";
        case PENTAMAP_ERR_BAD_ARG: return "bad argument";
        case PENTAMAP_ERR_NO_CLOSURE: return "no closure";
        case PENTAMAP_ERR_CALIBRATION: return "calibration failed";
        case PENTAMAP_ERR_INCONCLUSIVE: return "inconclusive";
        case PENTAMAP_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* pentamap_version(void) { return "1.0.0"; }

pentamap_status pentamap_t3(double x, double y, double* ox, double* oy) {
    return map2(x, y, ox, oy, [](const DOct& o) { return t3(o); });
}

pentamap_status pentamap_t3_inverse(double x, double y, double* ox, double* oy) {
    return map2(x, y, ox, oy, [](const DOct& o) { return t3_inverse(o); });
}

pentamap_status pentamap_psi(double x, double y, double* out) {
    if (!out) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] { *out = psi(DOct(x, y)); });
}

pentamap_status pentamap_dual(double x, double y, double* ox, double* oy) {
    return map2(x, y, ox, oy, [](const DOct& o) { return dual_map(o); });
}

pentamap_status pentamap_sigma1(double x, double y, double* ox, double* oy) {
    return map2(x, y, ox, oy, [](const DOct& o) { return sigma1(o); });
}

pentamap_status pentamap_sigma2(double x, double y, double* ox, double* oy) {
    return map2(x, y, ox, oy, [](const DOct& o) { return sigma2(o); });
}

pentamap_status pentamap_half_map(double x, double y, double* ox, double* oy) {
    return map2(x, y, ox, oy, [](const DOct& o) { return half_map(o); });
}

pentamap_status pentamap_diagonal_step(double x, double* out) {
    if (!out) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] { *out = diagonal_step(x); });
}

pentamap_status pentamap_octagon_vertices(double x, double y, double out_xy[16]) {
    if (!out_xy) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        auto verts = canonical_vertices(DOct(x, y));
        for (int i = 0; i < 8; ++i) {
            out_xy[2 * i] = verts[i][0] / verts[i][2];
            out_xy[2 * i + 1] = verts[i][1] / verts[i][2];
        }
    });
}

int pentamap_octagon_is_convex(double x, double y) {
    try {
        return is_convex_octagon(DOct(x, y)) ? 1 : 0;
    } catch (const std::exception& e) {
        return -static_cast<int>(status_of(e));
    }
}

pentamap_status pentamap_t3_exact(const char* x, const char* y, char* out_x,
                                  size_t out_x_size, char* out_y, size_t out_y_size) {
    if (!x || !y) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        SymmetricOctagon<Rational> o(parse_rational(x), parse_rational(y));
        auto r = t3(o);
        pentamap_status s = write_string(format_rational(r.x), out_x, out_x_size);
        if (s == PENTAMAP_OK) s = write_string(format_rational(r.y), out_y, out_y_size);
        if (s != PENTAMAP_OK) throw Error("output buffer too small");
    });
}

pentamap_status pentamap_psi_exact(const char* x, const char* y, char* out,
                                   size_t out_size) {
    if (!x || !y) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        SymmetricOctagon<Rational> o(parse_rational(x), parse_rational(y));
        if (write_string(format_rational(psi(o)), out, out_size) != PENTAMAP_OK)
            throw Error("output buffer too small");
    });
}

pentamap_status pentamap_dual_exact(const char* x, const char* y, char* out_x,
                                    size_t out_x_size, char* out_y, size_t out_y_size) {
    if (!x || !y) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        SymmetricOctagon<Rational> o(parse_rational(x), parse_rational(y));
        auto r = dual_map(o);
        pentamap_status s = write_string(format_rational(r.x), out_x, out_x_size);
        if (s == PENTAMAP_OK) s = write_string(format_rational(r.y), out_y, out_y_size);
        if (s != PENTAMAP_OK) throw Error("output buffer too small");
    });
}

}  // extern "C"

struct pentamap_orbit {
    struct Row {
        long j;
        double x, y, psi;
        bool has_psi, convex, pole;
        std::string x_str, y_str, psi_str;
    };
    std::vector<Row> rows;
};

namespace {

template <class S>
void fill_orbit(pentamap_orbit* h, const OrbitRecord<S>& rec) {
    h->rows.reserve(rec.steps.size());
    for (const auto& e : rec.steps) {
        pentamap_orbit::Row r;
        r.j = e.j;
        r.x = to_double(e.x);
        r.y = to_double(e.y);
        r.has_psi = e.psi.has_value();
        r.psi = r.has_psi ? to_double(*e.psi) : 0.0;
        r.convex = e.convex;
        r.pole = e.pole;
        r.x_str = format_scalar(e.x);
        r.y_str = format_scalar(e.y);
        if (r.has_psi) r.psi_str = format_scalar(*e.psi);
        h->rows.push_back(std::move(r));
    }
}

}  // namespace

extern "C" {

pentamap_orbit* pentamap_orbit_run(const char* x, const char* y,
                                   pentamap_backend backend, long n_fwd, long n_bwd,
                                   pentamap_status* status) {
    pentamap_status local = PENTAMAP_OK;
    pentamap_orbit* handle = nullptr;
    local = guarded([&] {
        if (!x || !y || n_fwd < 0 || n_bwd < 0) throw Error("bad orbit arguments");
        auto h = std::make_unique<pentamap_orbit>();
        if (backend == PENTAMAP_BACKEND_RATIONAL) {
            SymmetricOctagon<Rational> seed(parse_rational(x), parse_rational(y));
            fill_orbit(h.get(), orbit(seed, n_fwd, n_bwd));
        } else {
            SymmetricOctagon<double> seed(std::stod(x), std::stod(y));
            fill_orbit(h.get(), orbit(seed, n_fwd, n_bwd));
        }
        handle = h.release();
    });
    if (status) *status = local;
    return handle;
}

size_t pentamap_orbit_size(const pentamap_orbit* orbit) {
    return orbit ? orbit->rows.size() : 0;
}

pentamap_status pentamap_orbit_get(const pentamap_orbit* orbit, size_t index,
                                   pentamap_orbit_row* row) {
    if (!orbit || !row || index >= orbit->rows.size()) return PENTAMAP_ERR_BAD_ARG;
    const auto& r = orbit->rows[index];
    row->j = r.j;
    row->x = r.x;
    row->y = r.y;
    row->psi = r.psi;
    row->has_psi = r.has_psi;
    row->convex = r.convex;
    row->pole = r.pole;
    row->x_str = r.x_str.c_str();
    row->y_str = r.y_str.c_str();
    row->psi_str = r.has_psi ? r.psi_str.c_str() : nullptr;
    return PENTAMAP_OK;
}

void pentamap_orbit_free(pentamap_orbit* orbit) { delete orbit; }

pentamap_status pentamap_escape_times(double x, double y, long cap, long* fwd,
                                      long* bwd) {
    if (!fwd || !bwd || cap <= 0) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        EscapeTimes et = escape_times(DOct(x, y), cap);
        *fwd = et.fwd.value_or(0);
        *bwd = et.bwd.value_or(0);
    });
}

}  // extern "C"

struct pentamap_scan {
    ScanField field;
};

extern "C" {

pentamap_scan* pentamap_escape_scan(double x0, double x1, double y0, double y1, int nx,
                                    int ny, long cap, pentamap_status* status) {
    pentamap_scan* handle = nullptr;
    pentamap_status local = guarded([&] {
        if (nx <= 0 || ny <= 0 || cap <= 0 || !(x0 < x1) || !(y0 < y1))
            throw Error("bad scan window");
        ScanOptions opt;
        opt.x0 = x0;
        opt.x1 = x1;
        opt.y0 = y0;
        opt.y1 = y1;
        opt.nx = nx;
        opt.ny = ny;
        opt.cap = cap;
        auto h = std::make_unique<pentamap_scan>();
        h->field = escape_scan(opt);
        handle = h.release();
    });
    if (status) *status = local;
    return handle;
}

pentamap_status pentamap_scan_dims(const pentamap_scan* scan, int* nx, int* ny) {
    if (!scan || !nx || !ny) return PENTAMAP_ERR_BAD_ARG;
    *nx = scan->field.opt.nx;
    *ny = scan->field.opt.ny;
    return PENTAMAP_OK;
}

pentamap_status pentamap_scan_cell(const pentamap_scan* scan, int ix, int iy, double* x,
                                   double* y, int* in_region, long* fwd, long* bwd) {
    if (!scan || ix < 0 || iy < 0 || ix >= scan->field.opt.nx || iy >= scan->field.opt.ny)
        return PENTAMAP_ERR_BAD_ARG;
    const ScanCell& c = scan->field.at(ix, iy);
    if (x) *x = c.x;
    if (y) *y = c.y;
    if (in_region) *in_region = c.in_region;
    if (fwd) *fwd = c.fwd;
    if (bwd) *bwd = c.bwd;
    return PENTAMAP_OK;
}

void pentamap_scan_free(pentamap_scan* scan) { delete scan; }

pentamap_status pentamap_cubic_value(double lambda, double x, double y, double z,
                                     double* out) {
    if (!out) return PENTAMAP_ERR_BAD_ARG;
    CubicLevel<double> level(lambda);
    *out = cubic_value(level, HomogeneousPoint<double>(x, y, z));
    return PENTAMAP_OK;
}

pentamap_status pentamap_cubic_gradient(double lambda, double x, double y, double z,
                                        double out[3]) {
    if (!out) return PENTAMAP_ERR_BAD_ARG;
    CubicLevel<double> level(lambda);
    auto g = cubic_gradient(level, HomogeneousPoint<double>(x, y, z));
    out[0] = g[0];
    out[1] = g[1];
    out[2] = g[2];
    return PENTAMAP_OK;
}

int pentamap_cubic_is_singular(double lambda_re, double lambda_im, double window,
                               double witness_re[3], double witness_im[3]) {
    auto res = is_singular_level(std::complex<double>(lambda_re, lambda_im),
                                 window > 0 ? window : 1e-9);
    if (res.singular && witness_re && witness_im) {
        for (int i = 0; i < 3; ++i) {
            witness_re[i] = res.witness[i].real();
            witness_im[i] = res.witness[i].imag();
        }
    }
    return res.singular ? 1 : 0;
}

pentamap_status pentamap_antidiagonal_points(double lambda, double out_x[3]) {
    if (!out_x) return PENTAMAP_ERR_BAD_ARG;
    auto pts = antidiagonal_points(lambda);
    out_x[0] = pts[0];
    out_x[1] = pts[1];
    out_x[2] = pts[2];
    return PENTAMAP_OK;
}

}  // extern "C"

struct pentamap_trace {
    std::vector<RealCurveComponent> components;
    std::vector<std::vector<double>> flat_points;
    std::vector<std::vector<double>> flat_crossings;
};

extern "C" {

pentamap_trace* pentamap_trace_curve(double lambda, int resolution, double window,
                                     pentamap_status* status) {
    pentamap_trace* handle = nullptr;
    pentamap_status local = guarded([&] {
        TraceOptions opt;
        if (resolution > 0) opt.resolution = resolution;
        if (window > 0) opt.window = window;
        auto h = std::make_unique<pentamap_trace>();
        h->components = trace_level_curve(lambda, opt);
        for (const auto& c : h->components) {
            std::vector<double> pts, cross;
            pts.reserve(c.polyline.size() * 2);
            for (const auto& p : c.polyline) {
                pts.push_back(p[0]);
                pts.push_back(p[1]);
            }
            for (const auto& p : c.l_crossings) {
                cross.push_back(p[0]);
                cross.push_back(p[1]);
            }
            h->flat_points.push_back(std::move(pts));
            h->flat_crossings.push_back(std::move(cross));
        }
        handle = h.release();
    });
    if (status) *status = local;
    return handle;
}

size_t pentamap_trace_component_count(const pentamap_trace* trace) {
    return trace ? trace->components.size() : 0;
}

size_t pentamap_trace_component(const pentamap_trace* trace, size_t index,
                                const double** xy, int* bounded) {
    if (!trace || index >= trace->components.size()) return 0;
    if (xy) *xy = trace->flat_points[index].data();
    if (bounded) *bounded = trace->components[index].bounded;
    return trace->flat_points[index].size() / 2;
}

size_t pentamap_trace_crossings(const pentamap_trace* trace, size_t index,
                                const double** xy) {
    if (!trace || index >= trace->components.size()) return 0;
    if (xy) *xy = trace->flat_crossings[index].data();
    return trace->flat_crossings[index].size() / 2;
}

void pentamap_trace_free(pentamap_trace* trace) { delete trace; }

pentamap_status pentamap_rotation_number(double lambda, double seed_x, double seed_y,
                                         long n, double* value, double* convergence) {
    if (!value || n <= 0) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        RotationEstimate est = rotation_number_estimate(lambda, {seed_x, seed_y}, n);
        *value = est.value;
        if (convergence) *convergence = est.convergence;
    });
}

pentamap_status pentamap_antidiagonal_residual(double x, double* out) {
    if (!out) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] { *out = antidiagonal_fixed_residual(x); });
}

pentamap_status pentamap_minor_orbit_escape(const double* arcs, size_t n_arcs,
                                            double theta, double p, long cap, long* k) {
    if (!arcs || !k || n_arcs == 0 || cap <= 0) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        CircleArcSet s;
        for (size_t i = 0; i < n_arcs; ++i)
            s.arcs.emplace_back(arcs[2 * i], arcs[2 * i + 1]);
        auto res = minor_orbit_escape(s, theta, p, cap);
        *k = res.value_or(0);
    });
}

}  // extern "C"

struct pentamap_poncelet {
    PonceletResult result;
    std::vector<double> flat_vertices;
};

extern "C" {

pentamap_poncelet* pentamap_poncelet_solve(int n, double offset, double start_angle,
                                           double param_lo, double param_hi,
                                           pentamap_status* status) {
    pentamap_poncelet* handle = nullptr;
    pentamap_status local = guarded([&] {
        auto family = [offset](double r) { return circle(offset, 0.0, r); };
        auto h = std::make_unique<pentamap_poncelet>();
        h->result = poncelet_polygon(circle(0, 0, 1), n, start_angle, family, param_lo,
                                     param_hi);
        for (const auto& v : h->result.polygon.vertices) {
            h->flat_vertices.push_back(v[0]);
            h->flat_vertices.push_back(v[1]);
            h->flat_vertices.push_back(v[2]);
        }
        handle = h.release();
    });
    if (status) *status = local;
    return handle;
}

pentamap_status pentamap_poncelet_info(const pentamap_poncelet* poncelet,
                                       double* parameter, double* defect) {
    if (!poncelet) return PENTAMAP_ERR_BAD_ARG;
    if (parameter) *parameter = poncelet->result.parameter;
    if (defect) *defect = poncelet->result.defect;
    return PENTAMAP_OK;
}

size_t pentamap_poncelet_vertices(const pentamap_poncelet* poncelet, const double** xyz) {
    if (!poncelet) return 0;
    if (xyz) *xyz = poncelet->flat_vertices.data();
    return poncelet->flat_vertices.size() / 3;
}

pentamap_status pentamap_poncelet_check_t3(const pentamap_poncelet* poncelet,
                                           double tol, int* equivalent) {
    if (!poncelet || !equivalent) return PENTAMAP_ERR_BAD_ARG;
    return guarded([&] {
        Polygon<double> image = deep_diagonal(poncelet->result.polygon, 3);
        *equivalent =
            projectively_equivalent(poncelet->result.polygon, image, tol > 0 ? tol : 1e-8);
    });
}

void pentamap_poncelet_free(pentamap_poncelet* poncelet) { delete poncelet; }

pentamap_status pentamap_calibrate(int panel_size, unsigned long long rng_seed,
                                   int* shift, int* reversed, double* max_error) {
    return guarded([&] {
        Calibration cal = calibrate_labeling(panel_size > 0 ? panel_size : 24,
                                             rng_seed ? rng_seed : 20260810ull);
        if (shift) *shift = cal.shift;
        if (reversed) *reversed = cal.reversed;
        if (max_error) *max_error = cal.max_error;
    });
}

}  // extern "C"

struct pentamap_report {
    std::vector<CheckResult> results;
};

extern "C" {

pentamap_report* pentamap_verify(const char* suite, long trials,
                                 unsigned long long rng_seed, pentamap_status* status) {
    pentamap_report* handle = nullptr;
    pentamap_status local = guarded([&] {
        if (!suite) throw Error("suite name required");
        auto h = std::make_unique<pentamap_report>();
        h->results = run_verify_suite(suite, trials, rng_seed ? rng_seed : 20260810ull);
        handle = h.release();
    });
    if (status) *status = local;
    return handle;
}

size_t pentamap_report_size(const pentamap_report* report) {
    return report ? report->results.size() : 0;
}

pentamap_status pentamap_report_get(const pentamap_report* report, size_t index,
                                    const char** name, int* passed, long* trials,
                                    long* failures, const char** detail) {
    if (!report || index >= report->results.size()) return PENTAMAP_ERR_BAD_ARG;
    const CheckResult& r = report->results[index];
    if (name) *name = r.name.c_str();
    if (passed) *passed = r.passed;
    if (trials) *trials = r.trials;
    if (failures) *failures = r.failures;
    if (detail) *detail = r.detail.c_str();
    return PENTAMAP_OK;
}

int pentamap_report_all_passed(const pentamap_report* report) {
    return report && all_passed(report->results) ? 1 : 0;
}

void pentamap_report_free(pentamap_report* report) { delete report; }

}  // extern "C"

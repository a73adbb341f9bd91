// pentamap CLI: orbit iteration, identity verification, level-curve tracing,
// escape-time maps, and Poncelet experiments over the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pentamap.h"
#include "svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadInput = 2;

std::string g_command_line;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Outputs go to a file or stdout ("-"); every file starts with the full
// command line as a comment so runs are reproducible from the artifact.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw CLI::RuntimeError("cannot open output file: " + path, kExitBadInput);
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

    void comment_header() { stream() << "# " << g_command_line << "\n"; }

private:
    std::ofstream file_;
};

int fail_status(const char* what, pentamap_status st) {
    std::cerr << what << ": " << pentamap_status_str(st) << "\n";
    return (st == PENTAMAP_ERR_NO_CLOSURE || st == PENTAMAP_ERR_CALIBRATION)
               ? kExitVerifyFailure
               : kExitBadInput;
}

struct Seed {
    std::string x, y;
};

std::vector<Seed> collect_seeds(const std::string& x, const std::string& y,
                                const std::string& seed_list) {
    std::vector<Seed> seeds;
    if (!seed_list.empty()) {
        std::ifstream in(seed_list);
        if (!in) throw CLI::RuntimeError("cannot open seed list: " + seed_list, kExitBadInput);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            Seed s;
            if (ls >> s.x >> s.y) seeds.push_back(s);
        }
        if (seeds.empty())
            throw CLI::RuntimeError("seed list is empty: " + seed_list, kExitBadInput);
    } else {
        if (x.empty() || y.empty())
            throw CLI::RuntimeError("seed required: --x and --y (or --seed-list)",
                                    kExitBadInput);
        seeds.push_back({x, y});
    }
    return seeds;
}

int cmd_iterate(const std::string& x, const std::string& y, const std::string& seed_list,
                long n_fwd, long n_bwd, const std::string& backend_name,
                const std::string& out_path) {
    pentamap_backend backend = backend_name == "rational" ? PENTAMAP_BACKEND_RATIONAL
                                                          : PENTAMAP_BACKEND_FLOAT;
    auto seeds = collect_seeds(x, y, seed_list);
    Output out(out_path);
    out.comment_header();
    out.stream() << "j,x,y,psi,convex,pole\n";
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (seeds.size() > 1)
            out.stream() << "# seed " << k << ": " << seeds[k].x << ' ' << seeds[k].y << "\n";
        pentamap_status st = PENTAMAP_OK;
        pentamap_orbit* orb = pentamap_orbit_run(seeds[k].x.c_str(), seeds[k].y.c_str(),
                                                 backend, n_fwd, n_bwd, &st);
        if (!orb) return fail_status("orbit failed", st);
        std::unique_ptr<pentamap_orbit, decltype(&pentamap_orbit_free)> guard(
            orb, &pentamap_orbit_free);
        for (std::size_t i = 0; i < pentamap_orbit_size(orb); ++i) {
            pentamap_orbit_row row{};
            pentamap_orbit_get(orb, i, &row);
            out.stream() << row.j << ',' << row.x_str << ',' << row.y_str << ','
                         << (row.psi_str ? row.psi_str : "undefined") << ','
                         << (row.convex ? 1 : 0) << ',' << (row.pole ? 1 : 0) << "\n";
        }
    }
    return kExitOk;
}

int cmd_invariant(const std::string& x, const std::string& y,
                  const std::string& seed_list, const std::string& backend_name,
                  const std::string& out_path) {
    auto seeds = collect_seeds(x, y, seed_list);
    Output out(out_path);
    out.comment_header();
    out.stream() << "x,y,psi\n";
    for (const auto& s : seeds) {
        if (backend_name == "rational") {
            char buf[4096];
            pentamap_status st =
                pentamap_psi_exact(s.x.c_str(), s.y.c_str(), buf, sizeof buf);
            if (st != PENTAMAP_OK) return fail_status("psi failed", st);
            out.stream() << s.x << ',' << s.y << ',' << buf << "\n";
        } else {
            double v = 0;
            pentamap_status st = pentamap_psi(std::stod(s.x), std::stod(s.y), &v);
            if (st != PENTAMAP_OK) return fail_status("psi failed", st);
            out.stream() << s.x << ',' << s.y << ',' << fmt17(v) << "\n";
        }
    }
    return kExitOk;
}

int cmd_dual(const std::string& x, const std::string& y, const std::string& seed_list,
             const std::string& backend_name, const std::string& out_path) {
    auto seeds = collect_seeds(x, y, seed_list);
    Output out(out_path);
    out.comment_header();
    out.stream() << "x,y,dual_x,dual_y\n";
    for (const auto& s : seeds) {
        if (backend_name == "rational") {
            char bx[4096], by[4096];
            pentamap_status st = pentamap_dual_exact(s.x.c_str(), s.y.c_str(), bx,
                                                     sizeof bx, by, sizeof by);
            if (st != PENTAMAP_OK) return fail_status("dual failed", st);
            out.stream() << s.x << ',' << s.y << ',' << bx << ',' << by << "\n";
        } else {
            double dx = 0, dy = 0;
            pentamap_status st = pentamap_dual(std::stod(s.x), std::stod(s.y), &dx, &dy);
            if (st != PENTAMAP_OK) return fail_status("dual failed", st);
            out.stream() << s.x << ',' << s.y << ',' << fmt17(dx) << ',' << fmt17(dy)
                         << "\n";
        }
    }
    return kExitOk;
}

std::vector<std::pair<double, double>> circle_points(double cx, double cy, double r,
                                                     int n = 256) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        double t = 2 * M_PI * i / n;
        pts.emplace_back(cx + r * std::cos(t), cy + r * std::sin(t));
    }
    return pts;
}

void draw_overlays(SvgCanvas& svg, double window) {
    // the antidiagonal y = -x, the diagonal, the unit circle, and the
    // boundary of the convex region (chord of x+y=1 plus the arc of the
    // circle centered (1/2,1/2) through (1,0) and (0,1))
    svg.line(-window, window, window, -window, "antidiagonal");
    svg.line(-window, -window, window, window, "diagonal");
    svg.polyline(circle_points(0, 0, 1), "unitcircle");
    svg.line(1, 0, 0, 1, "convex-boundary");
    std::vector<std::pair<double, double>> arc;
    double r = std::sqrt(0.5);
    for (int i = 0; i <= 128; ++i) {
        double t = -M_PI / 4 + 3 * M_PI / 2 * i / 128.0 + M_PI / 4;
        t = M_PI * (-0.25 + 1.5 * i / 128.0);
        double px = 0.5 + r * std::cos(t), py = 0.5 + r * std::sin(t);
        if (px + py >= 1) arc.emplace_back(px, py);
    }
    svg.polyline(arc, "convex-boundary");
}

int cmd_levelset(double lambda, int resolution, double window,
                 const std::string& out_svg, const std::string& out_csv) {
    pentamap_status st = PENTAMAP_OK;
    pentamap_trace* trace = pentamap_trace_curve(lambda, resolution, window, &st);
    if (!trace) return fail_status("trace failed", st);
    std::unique_ptr<pentamap_trace, decltype(&pentamap_trace_free)> guard(
        trace, &pentamap_trace_free);

    if (!out_csv.empty()) {
        Output out(out_csv);
        out.comment_header();
        out.stream() << "component,bounded,index,x,y\n";
        for (std::size_t c = 0; c < pentamap_trace_component_count(trace); ++c) {
            const double* xy = nullptr;
            int bounded = 0;
            std::size_t n = pentamap_trace_component(trace, c, &xy, &bounded);
            for (std::size_t i = 0; i < n; ++i)
                out.stream() << c << ',' << bounded << ',' << i << ',' << fmt17(xy[2 * i])
                             << ',' << fmt17(xy[2 * i + 1]) << "\n";
        }
    }

    if (!out_svg.empty()) {
        SvgCanvas svg(-window, window, -window, window);
        svg.add_style(
            "polyline,line,circle{fill:none;stroke-width:1.5}"
            ".bounded{stroke:#1f77b4;stroke-width:2.5}"
            ".unbounded{stroke:#d62728;stroke-width:2.5}"
            ".antidiagonal{stroke:#cc4444;stroke-dasharray:6 4}"
            ".diagonal{stroke:#999999;stroke-dasharray:2 4}"
            ".unitcircle{stroke:#888888;stroke-dasharray:2 4}"
            ".convex-boundary{stroke:#44aa44}"
            ".crossing{fill:#cc4444;stroke:none}");
        svg.add_comment(g_command_line);
        draw_overlays(svg, window);
        for (std::size_t c = 0; c < pentamap_trace_component_count(trace); ++c) {
            const double* xy = nullptr;
            int bounded = 0;
            std::size_t n = pentamap_trace_component(trace, c, &xy, &bounded);
            std::vector<std::pair<double, double>> pts;
            pts.reserve(n);
            for (std::size_t i = 0; i < n; ++i) pts.emplace_back(xy[2 * i], xy[2 * i + 1]);
            svg.polyline(pts, bounded ? "bounded" : "unbounded");
            const double* cr = nullptr;
            std::size_t m = pentamap_trace_crossings(trace, c, &cr);
            for (std::size_t i = 0; i < m; ++i)
                svg.marker(cr[2 * i], cr[2 * i + 1], "crossing");
        }
        Output out(out_svg);
        out.stream() << svg.render();
    }
    return kExitOk;
}

std::string heat_color(long steps, long cap) {
    if (steps < 0) return "#2040c0";  // censored
    double t = std::log(1.0 + static_cast<double>(steps)) /
               std::log(1.0 + static_cast<double>(cap));
    t = std::min(1.0, std::max(0.0, t));
    int rch = static_cast<int>(255 * t);
    int gch = static_cast<int>(64 + 128 * (1 - t));
    int bch = static_cast<int>(48 * (1 - t));
    char buf[10];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rch, gch, bch);
    return buf;
}

int cmd_escape_map(double x0, double x1, double y0, double y1, int resolution, long cap,
                   const std::string& out_csv, const std::string& out_svg) {
    pentamap_status st = PENTAMAP_OK;
    pentamap_scan* scan =
        pentamap_escape_scan(x0, x1, y0, y1, resolution, resolution, cap, &st);
    if (!scan) return fail_status("scan failed", st);
    std::unique_ptr<pentamap_scan, decltype(&pentamap_scan_free)> guard(
        scan, &pentamap_scan_free);

    int nx = 0, ny = 0;
    pentamap_scan_dims(scan, &nx, &ny);
    if (!out_csv.empty()) {
        Output out(out_csv);
        out.comment_header();
        out.stream() << "ix,iy,x,y,in_region,fwd,bwd\n";
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                double cx = 0, cy = 0;
                int in_region = 0;
                long fwd = 0, bwd = 0;
                pentamap_scan_cell(scan, ix, iy, &cx, &cy, &in_region, &fwd, &bwd);
                out.stream() << ix << ',' << iy << ',' << fmt17(cx) << ',' << fmt17(cy)
                             << ',' << in_region << ',' << fwd << ',' << bwd << "\n";
            }
        }
    }
    if (!out_svg.empty()) {
        SvgCanvas svg(x0, x1, y0, y1);
        svg.add_comment(g_command_line);
        double wx = (x1 - x0) / nx, wy = (y1 - y0) / ny;
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                double cx = 0, cy = 0;
                int in_region = 0;
                long fwd = 0, bwd = 0;
                pentamap_scan_cell(scan, ix, iy, &cx, &cy, &in_region, &fwd, &bwd);
                if (!in_region) continue;
                svg.rect(cx - wx / 2, cy - wy / 2, wx, wy, heat_color(fwd, cap));
            }
        }
        svg.add_style(".overlay{fill:none;stroke:#000;stroke-width:1}");
        Output out(out_svg);
        out.stream() << svg.render();
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, long trials, unsigned long long rng_seed,
               const std::string& out_path) {
    pentamap_status st = PENTAMAP_OK;
    pentamap_report* rep = pentamap_verify(suite.c_str(), trials, rng_seed, &st);
    if (!rep) return fail_status("verify failed to run", st);
    std::unique_ptr<pentamap_report, decltype(&pentamap_report_free)> guard(
        rep, &pentamap_report_free);
    Output out(out_path);
    out.comment_header();
    for (std::size_t i = 0; i < pentamap_report_size(rep); ++i) {
        const char* name = nullptr;
        const char* detail = nullptr;
        int passed = 0;
        long t = 0, f = 0;
        pentamap_report_get(rep, i, &name, &passed, &t, &f, &detail);
        out.stream() << (passed ? "PASS" : "FAIL") << ' ' << name << " trials=" << t
                     << " failures=" << f;
        if (detail && detail[0]) out.stream() << "  (" << detail << ")";
        out.stream() << "\n";
    }
    bool ok = pentamap_report_all_passed(rep) != 0;
    out.stream() << (ok ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return ok ? kExitOk : kExitVerifyFailure;
}

int cmd_poncelet(int n, double offset, double start_angle, double param_lo,
                 double param_hi, double tol, const std::string& out_path) {
    pentamap_status st = PENTAMAP_OK;
    pentamap_poncelet* pc =
        pentamap_poncelet_solve(n, offset, start_angle, param_lo, param_hi, &st);
    if (!pc) return fail_status("poncelet construction failed", st);
    std::unique_ptr<pentamap_poncelet, decltype(&pentamap_poncelet_free)> guard(
        pc, &pentamap_poncelet_free);

    double parameter = 0, defect = 0;
    pentamap_poncelet_info(pc, &parameter, &defect);
    int equivalent = 0;
    st = pentamap_poncelet_check_t3(pc, tol, &equivalent);
    if (st != PENTAMAP_OK) return fail_status("equivalence check failed", st);

    const double* xyz = nullptr;
    std::size_t nv = pentamap_poncelet_vertices(pc, &xyz);
    nlohmann::ordered_json doc;
    doc["command"] = g_command_line;
    doc["n"] = nv;
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < nv; ++i) {
        verts.push_back({fmt17(xyz[3 * i]), fmt17(xyz[3 * i + 1]), fmt17(xyz[3 * i + 2])});
    }
    doc["vertices"] = verts;
    doc["inner_parameter"] = fmt17(parameter);
    doc["closure_defect"] = fmt17(defect);
    doc["t3_image_projectively_equivalent"] = equivalent != 0;

    Output out(out_path);
    out.stream() << doc.dump(2) << "\n";
    std::cerr << "parameter=" << fmt17(parameter) << " defect=" << fmt17(defect)
              << " equivalent=" << (equivalent ? "yes" : "no") << "\n";
    return equivalent ? kExitOk : kExitVerifyFailure;
}

int cmd_calibrate(int panel, unsigned long long rng_seed) {
    int shift = 0, reversed = 0;
    double max_error = 0;
    pentamap_status st = pentamap_calibrate(panel, rng_seed, &shift, &reversed, &max_error);
    if (st != PENTAMAP_OK) return fail_status("calibration failed", st);
    std::cout << "# " << g_command_line << "\n";
    std::cout << "shift=" << shift << " reversed=" << (reversed ? 1 : 0)
              << " max_error=" << fmt17(max_error) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd << ' ';
        cmd << argv[i];
    }
    g_command_line = cmd.str();

    CLI::App app{"deep-diagonal pentagram maps on 4-fold-symmetric octagons"};
    app.require_subcommand(1);

    std::string x, y, seed_list, backend = "float", out = "-";
    long n_fwd = 10, n_bwd = 0;

    auto* iterate = app.add_subcommand("iterate", "run an (8,3)-pentagram orbit");
    iterate->add_option("--x", x, "seed x");
    iterate->add_option("--y", y, "seed y");
    iterate->add_option("--seed-list", seed_list, "file with one 'x y' seed per line");
    iterate->add_option("--fwd", n_fwd, "forward steps")->default_val(10);
    iterate->add_option("--bwd", n_bwd, "backward steps")->default_val(0);
    iterate->add_option("--backend", backend, "float|rational")->default_val("float");
    iterate->add_option("--out", out, "output CSV ('-' = stdout)")->default_val("-");

    auto* invariant = app.add_subcommand("invariant", "evaluate the orbit invariant");
    invariant->add_option("--x", x);
    invariant->add_option("--y", y);
    invariant->add_option("--seed-list", seed_list);
    invariant->add_option("--backend", backend)->default_val("float");
    invariant->add_option("--out", out)->default_val("-");

    auto* dual = app.add_subcommand("dual", "apply the duality involution");
    dual->add_option("--x", x);
    dual->add_option("--y", y);
    dual->add_option("--seed-list", seed_list);
    dual->add_option("--backend", backend)->default_val("float");
    dual->add_option("--out", out)->default_val("-");

    double lambda = 1.0, window = 6.0;
    int resolution = 2048;
    std::string out_svg, out_csv;
    auto* levelset = app.add_subcommand("levelset", "trace a level curve of the invariant");
    levelset->add_option("--lambda", lambda, "level parameter")->required();
    levelset->add_option("--resolution", resolution)->default_val(2048);
    levelset->add_option("--window", window)->default_val(6.0);
    levelset->add_option("--out-svg", out_svg, "SVG output path");
    levelset->add_option("--out-csv", out_csv, "CSV output path");

    double x0 = -0.25, x1 = 1.25, y0 = -0.25, y1 = 1.25;
    long cap = 10000;
    int scan_res = 128;
    auto* escape = app.add_subcommand("escape-map", "escape-time field over a window");
    escape->add_option("--x0", x0)->default_val(-0.25);
    escape->add_option("--x1", x1)->default_val(1.25);
    escape->add_option("--y0", y0)->default_val(-0.25);
    escape->add_option("--y1", y1)->default_val(1.25);
    escape->add_option("--resolution", scan_res)->default_val(128);
    escape->add_option("--cap", cap)->default_val(10000);
    escape->add_option("--out-csv", out_csv);
    escape->add_option("--out-svg", out_svg);

    std::string suite = "all";
    long trials = 0;
    unsigned long long rng_seed = 20260810ull;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite,
                       "identities|cubic|escape|poncelet|calibration|all")
        ->default_val("all");
    verify->add_option("--trials", trials, "0 = suite default")->default_val(0);
    verify->add_option("--rng-seed", rng_seed)->default_val(20260810ull);
    verify->add_option("--out", out)->default_val("-");

    int pn = 8;
    double offset = 0.1, start_angle = 0.3, plo = 0.2, phi_hi = 0.89, tol = 1e-8;
    auto* poncelet = app.add_subcommand("poncelet", "off-center Poncelet polygon");
    poncelet->add_option("--n", pn)->default_val(8);
    poncelet->add_option("--offset", offset, "inner-circle center offset")->default_val(0.1);
    poncelet->add_option("--start-angle", start_angle)->default_val(0.3);
    poncelet->add_option("--param-lo", plo)->default_val(0.2);
    poncelet->add_option("--param-hi", phi_hi)->default_val(0.89);
    poncelet->add_option("--tol", tol, "equivalence tolerance")->default_val(1e-8);
    poncelet->add_option("--out", out)->default_val("-");

    int panel = 24;
    auto* calibrate = app.add_subcommand("calibrate", "labeling calibration constants");
    calibrate->add_option("--panel", panel)->default_val(24);
    calibrate->add_option("--rng-seed", rng_seed)->default_val(20260810ull);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (app.got_subcommand(iterate))
            return cmd_iterate(x, y, seed_list, n_fwd, n_bwd, backend, out);
        if (app.got_subcommand(invariant))
            return cmd_invariant(x, y, seed_list, backend, out);
        if (app.got_subcommand(dual)) return cmd_dual(x, y, seed_list, backend, out);
        if (app.got_subcommand(levelset))
            return cmd_levelset(lambda, resolution, window, out_svg, out_csv);
        if (app.got_subcommand(escape))
            return cmd_escape_map(x0, x1, y0, y1, scan_res, cap, out_csv, out_svg);
        if (app.got_subcommand(verify)) return cmd_verify(suite, trials, rng_seed, out);
        if (app.got_subcommand(poncelet))
            return cmd_poncelet(pn, offset, start_angle, plo, phi_hi, tol, out);
        if (app.got_subcommand(calibrate)) return cmd_calibrate(panel, rng_seed);
    } catch (const CLI::RuntimeError& e) {
        std::cerr << e.what() << "\n";
        return e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}

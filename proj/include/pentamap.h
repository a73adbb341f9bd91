/* pentamap: deep-diagonal pentagram maps on symmetric octagons.
 *
 * C interface to the geometry core. All functions are thread-safe; handles
 * are owned by the caller and released with the matching _free function.
 * Scalars cross the boundary as doubles or, where exactness matters, as
 * decimal/rational strings ("3/4", "0.9", "-2").
 */
#ifndef PENTAMAP_H
#define PENTAMAP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pentamap_status {
    PENTAMAP_OK = 0,
    PENTAMAP_ERR_DEGENERATE = 1,   /* degenerate geometric input */
    PENTAMAP_ERR_POLE = 2,         /* indeterminacy point of a birational map */
    PENTAMAP_ERR_UNDEFINED = 3,    /* invariant undefined (xy = 0) */
    PENTAMAP_ERR_SINGULAR = 4,     /* singular level parameter */
    PENTAMAP_ERR_BAD_ARG = 5,      /* malformed argument */
    PENTAMAP_ERR_NO_CLOSURE = 6,   /* Poncelet bisection found no closure */
    PENTAMAP_ERR_CALIBRATION = 7,  /* labeling calibration failed */
    PENTAMAP_ERR_INCONCLUSIVE = 8, /* tolerance-ambiguous decision */
    PENTAMAP_ERR_INTERNAL = 9
} pentamap_status;

const char* pentamap_status_str(pentamap_status status);
const char* pentamap_version(void);

typedef enum pentamap_backend {
    PENTAMAP_BACKEND_FLOAT = 0,
    PENTAMAP_BACKEND_RATIONAL = 1
} pentamap_backend;

/* ---- closed-form octagon maps (float backend) ---------------------- */

pentamap_status pentamap_t3(double x, double y, double* out_x, double* out_y);
pentamap_status pentamap_t3_inverse(double x, double y, double* out_x, double* out_y);
pentamap_status pentamap_psi(double x, double y, double* out);
pentamap_status pentamap_dual(double x, double y, double* out_x, double* out_y);
pentamap_status pentamap_sigma1(double x, double y, double* out_x, double* out_y);
pentamap_status pentamap_sigma2(double x, double y, double* out_x, double* out_y);
pentamap_status pentamap_half_map(double x, double y, double* out_x, double* out_y);
pentamap_status pentamap_diagonal_step(double x, double* out);
/* 16 doubles: x0,y0,...,x7,y7 of the canonical representative */
pentamap_status pentamap_octagon_vertices(double x, double y, double out_xy[16]);
/* 1 convex, 0 not, negative pentamap_status on error */
int pentamap_octagon_is_convex(double x, double y);

/* ---- exact-string variants (both backends) -------------------------- */

/* Inputs accept "p/q", integer, or decimal text; outputs are written as
 * canonical "p/q" (rational backend). Buffers receive a NUL-terminated
 * string; PENTAMAP_ERR_BAD_ARG when too small. */
pentamap_status pentamap_t3_exact(const char* x, const char* y, char* out_x,
                                  size_t out_x_size, char* out_y, size_t out_y_size);
pentamap_status pentamap_psi_exact(const char* x, const char* y, char* out,
                                   size_t out_size);
pentamap_status pentamap_dual_exact(const char* x, const char* y, char* out_x,
                                    size_t out_x_size, char* out_y, size_t out_y_size);

/* ---- orbits ---------------------------------------------------------- */

typedef struct pentamap_orbit pentamap_orbit;

typedef struct pentamap_orbit_row {
    long j;
    double x, y;
    double psi;       /* meaningful only when has_psi */
    int has_psi;
    int convex;
    int pole;         /* stepping onward from this entry hit a pole */
    const char* x_str; /* exact text on the rational backend, %.17g on float */
    const char* y_str;
    const char* psi_str; /* NULL when undefined */
} pentamap_orbit_row;

/* Seeds are scalar strings parsed per backend. */
pentamap_orbit* pentamap_orbit_run(const char* x, const char* y,
                                   pentamap_backend backend, long n_fwd, long n_bwd,
                                   pentamap_status* status);
size_t pentamap_orbit_size(const pentamap_orbit* orbit);
pentamap_status pentamap_orbit_get(const pentamap_orbit* orbit, size_t index,
                                   pentamap_orbit_row* row);
void pentamap_orbit_free(pentamap_orbit* orbit);

/* ---- escape times ---------------------------------------------------- */

/* *fwd > 0 and *bwd < 0 on escape; 0 when censored at the cap. */
pentamap_status pentamap_escape_times(double x, double y, long cap, long* fwd,
                                      long* bwd);

typedef struct pentamap_scan pentamap_scan;

pentamap_scan* pentamap_escape_scan(double x0, double x1, double y0, double y1, int nx,
                                    int ny, long cap, pentamap_status* status);
pentamap_status pentamap_scan_dims(const pentamap_scan* scan, int* nx, int* ny);
/* fwd/bwd: escape step counts, -1 when censored, 0 outside the region */
pentamap_status pentamap_scan_cell(const pentamap_scan* scan, int ix, int iy, double* x,
                                   double* y, int* in_region, long* fwd, long* bwd);
void pentamap_scan_free(pentamap_scan* scan);

/* ---- cubic pencil ----------------------------------------------------- */

pentamap_status pentamap_cubic_value(double lambda, double x, double y, double z,
                                     double* out);
pentamap_status pentamap_cubic_gradient(double lambda, double x, double y, double z,
                                        double out[3]);
/* 1 singular (witness_re/im filled with x,y,z), 0 not; window on |lambda -
 * root| distance */
int pentamap_cubic_is_singular(double lambda_re, double lambda_im, double window,
                               double witness_re[3], double witness_im[3]);
/* the three intersections with the antidiagonal y = -x, as x-values */
pentamap_status pentamap_antidiagonal_points(double lambda, double out_x[3]);

typedef struct pentamap_trace pentamap_trace;

pentamap_trace* pentamap_trace_curve(double lambda, int resolution, double window,
                                     pentamap_status* status);
size_t pentamap_trace_component_count(const pentamap_trace* trace);
/* interleaved x,y polyline; returns point count, 0 on bad index */
size_t pentamap_trace_component(const pentamap_trace* trace, size_t index,
                                const double** xy, int* bounded);
size_t pentamap_trace_crossings(const pentamap_trace* trace, size_t index,
                                const double** xy);
void pentamap_trace_free(pentamap_trace* trace);

/* ---- dynamics extras --------------------------------------------------- */

pentamap_status pentamap_rotation_number(double lambda, double seed_x, double seed_y,
                                         long n, double* value, double* convergence);
pentamap_status pentamap_antidiagonal_residual(double x, double* out);
/* arcs: n_arcs (lo,hi) pairs; *k = first escape index, 0 if none within cap */
pentamap_status pentamap_minor_orbit_escape(const double* arcs, size_t n_arcs,
                                            double theta, double p, long cap, long* k);

/* ---- Poncelet construction -------------------------------------------- */

typedef struct pentamap_poncelet pentamap_poncelet;

/* Outer unit circle; inner family of circles centered (offset, 0) with the
 * radius as the bisected parameter in [param_lo, param_hi]. */
pentamap_poncelet* pentamap_poncelet_solve(int n, double offset, double start_angle,
                                           double param_lo, double param_hi,
                                           pentamap_status* status);
pentamap_status pentamap_poncelet_info(const pentamap_poncelet* poncelet,
                                       double* parameter, double* defect);
/* vertices as homogeneous triples x,y,z; returns vertex count */
size_t pentamap_poncelet_vertices(const pentamap_poncelet* poncelet,
                                  const double** xyz);
/* checks projective equivalence of the polygon with its 3-diagonal image */
pentamap_status pentamap_poncelet_check_t3(const pentamap_poncelet* poncelet,
                                           double tol, int* equivalent);
void pentamap_poncelet_free(pentamap_poncelet* poncelet);

/* ---- calibration and verification -------------------------------------- */

pentamap_status pentamap_calibrate(int panel_size, unsigned long long rng_seed,
                                   int* shift, int* reversed, double* max_error);

typedef struct pentamap_report pentamap_report;

pentamap_report* pentamap_verify(const char* suite, long trials,
                                 unsigned long long rng_seed, pentamap_status* status);
size_t pentamap_report_size(const pentamap_report* report);
pentamap_status pentamap_report_get(const pentamap_report* report, size_t index,
                                    const char** name, int* passed, long* trials,
                                    long* failures, const char** detail);
int pentamap_report_all_passed(const pentamap_report* report);
void pentamap_report_free(pentamap_report* report);

#ifdef __cplusplus
}
#endif

#endif /* PENTAMAP_H */

/*
 * bridge_loe.h - public C API for the bridge-loe library.
 *
 * Exact finite-N distribution of the maximal height of N non-intersecting
 * Brownian bridges, the matching law of the largest eigenvalue of the
 * (N+1) x N real covariance ensemble, their Tracy-Widom GOE limit, Monte
 * Carlo cross-checks, and the numerical identity suite backing the
 * determinant formulas.
 *
 * All functions are thread-safe.  Fallible calls return a bloe_status and
 * write results through out-pointers; on failure a human-readable message
 * is available from bloe_last_error() on the same thread.  Objects
 * returned through handle out-pointers are owned by the caller and must be
 * released with the matching *_free function.
 *
 * SPDX-License-Identifier: MIT
 */
#ifndef BRIDGE_LOE_H
#define BRIDGE_LOE_H

#include <stdint.h>

#ifndef BLOE_API
#if defined(_WIN32)
#define BLOE_API
#else
#define BLOE_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bloe_status {
    BLOE_OK = 0,       /* success */
    BLOE_EINVAL = 1,   /* null pointer or malformed request */
    BLOE_EDOM = 2,     /* argument outside the supported domain */
    BLOE_ENUMERIC = 3, /* an internal numerical certificate failed */
} bloe_status;

typedef enum bloe_cdf_kind {
    /* P(max height of the N bridges <= arg) */
    BLOE_CDF_MAXHEIGHT = 0,
    /* P(largest covariance-ensemble eigenvalue <= arg) */
    BLOE_CDF_LOE = 1,
} bloe_cdf_kind;

/* Library version as "major.minor.patch". */
BLOE_API const char* bloe_version(void);

/* Message for the most recent failure on the calling thread; the empty
 * string if no call has failed yet.  The pointer stays valid until the
 * next failing call on the same thread. */
BLOE_API const char* bloe_last_error(void);

/* ------------------------------------------------------------------ */
/* Scalar evaluation                                                   */
/* ------------------------------------------------------------------ */

/* Exact finite-N CDF at one point.  kind is a bloe_cdf_kind value and
 * n >= 1; the value is clamped to [0, 1] and an internal cross-check of
 * the two determinant routes must agree or BLOE_ENUMERIC is returned. */
BLOE_API bloe_status bloe_cdf(int kind, int n, double arg, double* out);

/* Tracy-Widom GOE CDF at r in [-10, 10], certified by refinement
 * doubling; BLOE_ENUMERIC if the certificate never holds. */
BLOE_API bloe_status bloe_fgoe(double r, double* out);

/* ------------------------------------------------------------------ */
/* CDF tables                                                          */
/* ------------------------------------------------------------------ */

typedef struct bloe_table bloe_table;

/* Evaluates the chosen CDF on the inclusive uniform grid of `steps`
 * points from lo to hi (steps >= 2, lo <= hi, both finite). */
BLOE_API bloe_status bloe_cdf_table_create(int kind, int n, double lo,
                                           double hi, int steps,
                                           bloe_table** out);

/* Number of rows; 0 if t is NULL. */
BLOE_API int bloe_table_rows(const bloe_table* t);

/* Reads row i (0-based) into *arg and *prob. */
BLOE_API bloe_status bloe_table_row(const bloe_table* t, int i, double* arg,
                                    double* prob);

BLOE_API void bloe_table_free(bloe_table* t);

/* ------------------------------------------------------------------ */
/* Identity verification                                               */
/* ------------------------------------------------------------------ */

typedef struct bloe_report bloe_report;

/* One verification check.  The string pointers belong to the report and
 * stay valid until bloe_report_free. */
typedef struct bloe_check_view {
    const char* name;   /* stable kebab-case identifier */
    const char* anchor; /* the identity checked, in plain notation */
    const char* params; /* parameter coverage */
    double max_err;
    double tol;
    int pass;          /* 0 or 1 */
    int informational; /* 1 if the check never gates the overall result */
} bloe_check_view;

/* Runs the full identity suite over the Cartesian product of the matrix
 * orders n_set (each in [1, 16]) and the barrier positions r_set (each in
 * (0, 8]).  Both arrays must be non-empty. */
BLOE_API bloe_status bloe_verify_run(const int* n_set, int n_count,
                                     const double* r_set, int r_count,
                                     bloe_report** out);

/* Number of checks; 0 if rep is NULL. */
BLOE_API int bloe_report_size(const bloe_report* rep);

/* Overall conjunction over non-informational checks; 0 if rep is NULL. */
BLOE_API int bloe_report_pass(const bloe_report* rep);

/* Reads check `index` (0-based; checks are sorted by name). */
BLOE_API bloe_status bloe_report_check(const bloe_report* rep, int index,
                                       bloe_check_view* out);

BLOE_API void bloe_report_free(bloe_report* rep);

/* ------------------------------------------------------------------ */
/* Monte Carlo cross-checks                                            */
/* ------------------------------------------------------------------ */

/* Samples `samples` (>= 10) top eigenvalues of the (n+1) x n covariance
 * ensemble with the given master seed and writes the Kolmogorov-Smirnov
 * distance to the exact law.  Deterministic for fixed (n, samples, seed)
 * regardless of thread count. */
BLOE_API bloe_status bloe_mc_loe_ks(int n, int64_t samples, uint64_t seed,
                                    double* ks_out);

/* Samples `samples` (>= 10) discrete non-intersecting bridge paths on a
 * uniform-in-logit grid with grid_segments (>= 2) time steps, estimates
 * P(max height <= level) on an internal 600-level grid (applying the
 * diffusion crossing correction when crossing_correction is nonzero), and
 * writes the largest deviation from the exact law over that grid.
 * Deterministic for fixed inputs regardless of thread count. */
BLOE_API bloe_status bloe_mc_bridges_ks(int n, int64_t samples,
                                        int grid_segments, uint64_t seed,
                                        int crossing_correction,
                                        double* sup_out);

/* ------------------------------------------------------------------ */
/* Tracy-Widom limit study                                             */
/* ------------------------------------------------------------------ */

typedef struct bloe_limit bloe_limit;

/* Evaluates the exact finite-N laws under their soft-edge scalings
 * against the common GOE limit on the inclusive uniform grid of `steps`
 * points from s_lo to s_hi.  Every n must be >= 4 and the grid must lie
 * inside [-5, 3]. */
BLOE_API bloe_status bloe_limit_create(const int* n_list, int n_count,
                                       double s_lo, double s_hi, int steps,
                                       bloe_limit** out);

/* Writes the number of N values and of grid points. */
BLOE_API bloe_status bloe_limit_counts(const bloe_limit* lim, int* n_count,
                                       int* grid_count);

/* The N value at n_index (0-based). */
BLOE_API bloe_status bloe_limit_n_value(const bloe_limit* lim, int n_index,
                                        int* n_out);

/* One comparison row for n_index at grid_index: the scaled argument s,
 * the finite-N bridge-height law G_N(s), the limit value at the matched
 * argument, and |G_N - limit|. */
BLOE_API bloe_status bloe_limit_row(const bloe_limit* lim, int n_index,
                                    int grid_index, double* s, double* g_n,
                                    double* limit, double* abs_err);

/* Largest |G_N - limit| over the grid for n_index. */
BLOE_API bloe_status bloe_limit_sup_err(const bloe_limit* lim, int n_index,
                                        double* out);

/* Largest disagreement between the two finite-N scalings evaluated at
 * matched arguments (zero up to rounding: they are the same quantity). */
BLOE_API bloe_status bloe_limit_matched_diff(const bloe_limit* lim,
                                             double* out);

BLOE_API void bloe_limit_free(bloe_limit* lim);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BRIDGE_LOE_H */

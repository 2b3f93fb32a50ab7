/* C interface to the lamination hull library.
 *
 * All functions return a lamhull_status; outputs are written through
 * pointers only on LAMHULL_OK. On failure lamhull_last_error() returns a
 * thread-local message describing what went wrong. Strings returned
 * through char** must be released with lamhull_string_free().
 */

#ifndef LAMHULL_H
#define LAMHULL_H

#include <stdint.h>

#if defined(_WIN32)
#define LAMHULL_API __declspec(dllexport)
#else
#define LAMHULL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lamhull_status {
  LAMHULL_OK = 0,
  LAMHULL_EINVAL = 1, /* malformed input (bad spectrum, bad option) */
  LAMHULL_EDOMAIN = 2, /* valid input outside the domain of the operation */
  LAMHULL_EFAIL = 3    /* internal contract or verification failure */
} lamhull_status;

LAMHULL_API const char* lamhull_status_name(lamhull_status s);

/* Message for the most recent failure on this thread. */
LAMHULL_API const char* lamhull_last_error(void);

LAMHULL_API void lamhull_string_free(char* s);

/* Opaque state around one base spectrum: derived branch parameters plus,
 * after lamhull_hull_build, the boundary polygon. */
typedef struct lamhull_problem lamhull_problem;

/* The eigenvalues are sorted and renormalized; they must be positive,
 * pairwise distinct and sum to 1 within 1e-9. */
LAMHULL_API lamhull_status lamhull_problem_create(double s1, double s2,
                                                  double s3,
                                                  lamhull_problem** out);
LAMHULL_API void lamhull_problem_destroy(lamhull_problem* p);

/* Stateless helpers for arbitrary spectra (validated the same way except
 * that repeated eigenvalues are allowed). */
LAMHULL_API lamhull_status lamhull_spectrum_invariants(double m1, double m2,
                                                       double m3, double* i2,
                                                       double* i3);
LAMHULL_API lamhull_status lamhull_spectrum_embed(double m1, double m2,
                                                  double m3, double* u,
                                                  double* v);

/* out = { u_alpha, u_beta, alpha, beta, Ua1, Ua2, Ua3, Ub1, Ub2, Ub3 }. */
LAMHULL_API lamhull_status lamhull_problem_params(const lamhull_problem* p,
                                                  double out[10]);

/* Invariant-plane slopes of the two optimal curves at the base point. */
LAMHULL_API lamhull_status lamhull_problem_slopes(const lamhull_problem* p,
                                                  double* slope_alpha,
                                                  double* slope_beta);

/* JSON object comparing the closed-form lamination angles with the
 * spectral route, including the raw quotients. */
LAMHULL_API lamhull_status lamhull_problem_angle_report(
    const lamhull_problem* p, char** json);

/* n >= 2 rows of 7: t, e2, m1, m2, m3, i2, i3. branch: 0 alpha, 1 beta. */
LAMHULL_API lamhull_status lamhull_curve_samples(const lamhull_problem* p,
                                                 int branch, int n,
                                                 double* rows);

/* Admissible factor set of the ordered pair (F, G). Writes the component
 * bounds lo1, hi1, lo2, hi2 into out (unused slots untouched) and the
 * number of components (0, 1 or 2). */
LAMHULL_API lamhull_status lamhull_admissible_set(const double F[3],
                                                  const double G[3],
                                                  double out[4],
                                                  int* n_components);

/* Default factor list for trajectories when no factor was requested:
 * the component endpoints plus the middle-eigenvalue ratio G2/F2 when it
 * is admissible. At most 8 values, sorted ascending. */
LAMHULL_API lamhull_status lamhull_trajectory_lambdas(const double F[3],
                                                      const double G[3],
                                                      double out[8], int* n);

/* n_t >= 2 rows of 6: t, m1, m2, m3, i2, i3 along the trajectory of the
 * factor-lambda connection from F to G. */
LAMHULL_API lamhull_status lamhull_trajectory_rows(const double F[3],
                                                   const double G[3],
                                                   double lambda, int n_t,
                                                   double* rows);

/* Boundary polygon of the inner region around the base spectrum.
 * samples_per_branch >= 16; boundary_tol > 0 is the plane distance below
 * which a point is classified Boundary. */
LAMHULL_API lamhull_status lamhull_hull_build(lamhull_problem* p,
                                              int samples_per_branch,
                                              double boundary_tol);
LAMHULL_API lamhull_status lamhull_hull_size(const lamhull_problem* p,
                                             int* n_vertices);
/* n_vertices rows of 5: u, v, m1, m2, m3. The closing vertex is not
 * repeated. */
LAMHULL_API lamhull_status lamhull_hull_rows(const lamhull_problem* p,
                                             double* rows);
/* 6 rows of 5 with the same layout: the permutation hexagon. */
LAMHULL_API lamhull_status lamhull_hexagon_rows(const lamhull_problem* p,
                                                double rows[30]);
/* membership: 0 Inside, 1 Boundary, 2 Outside; distance is the plane
 * distance to the polygon. Requires a built hull. */
LAMHULL_API lamhull_status lamhull_hull_contains(const lamhull_problem* p,
                                                 double m1, double m2,
                                                 double m3, int* membership,
                                                 double* distance);

/* Run a named verification suite ("rankone", "curves", "inequalities",
 * "extremal", "stability" or "all") and return the JSON report array.
 * passed becomes 1 when every check passed. */
LAMHULL_API lamhull_status lamhull_verify(const lamhull_problem* p,
                                          const char* suite, uint64_t seed,
                                          int grid, int samples,
                                          double boundary_tol, char** json,
                                          int* passed);

#ifdef __cplusplus
}
#endif

#endif /* LAMHULL_H */

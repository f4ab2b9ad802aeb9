/* C interface for exact computations with commuting unipotent integer
 * matrices: nilpotent logarithms, stabilizer lattices, closure equations of
 * sheets over a punctured polydisk, boundary limit sets, arcs, and numeric
 * verification.
 *
 * All functions returning char** allocate with malloc; release the string
 * with canext_string_free.  On any status other than CANEXT_OK the
 * thread-local message from canext_last_error describes the failure.
 * Returned JSON is deterministic: fixed field order, rationals as "p/q"
 * strings, complex numbers as [re, im] pairs.
 */
#ifndef CANEXT_H
#define CANEXT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define CANEXT_API __attribute__((visibility("default")))

typedef enum canext_status {
  CANEXT_OK = 0,
  CANEXT_ERROR_INPUT = 1,    /* malformed JSON or bad arguments */
  CANEXT_ERROR_MODEL = 2,    /* matrices fail a structural requirement */
  CANEXT_ERROR_VERIFY = 3,   /* numeric verification did not pass */
  CANEXT_ERROR_INTERNAL = 4
} canext_status;

typedef struct canext_model canext_model;  /* opaque */
typedef struct canext_sheet canext_sheet;  /* opaque */

CANEXT_API const char* canext_version(void);
CANEXT_API const char* canext_last_error(void);
CANEXT_API void canext_string_free(char* s);

/* Model files: {"n", "d", "T": [...]} and/or "N"; see README. */
CANEXT_API canext_status canext_model_parse(const char* json, canext_model** out);
CANEXT_API void canext_model_free(canext_model* m);
CANEXT_API canext_status canext_model_info_json(const canext_model* m, char** out);
CANEXT_API canext_status canext_model_log_json(const canext_model* m, char** out);

/* Closure equations of the sheet through the integer fiber vector h. */
CANEXT_API canext_status canext_sheet_compute(const canext_model* m, const int64_t* h, size_t hlen,
                                              canext_sheet** out);
CANEXT_API canext_status canext_sheet_parse(const char* json, canext_sheet** out);
CANEXT_API void canext_sheet_free(canext_sheet* s);
CANEXT_API canext_status canext_sheet_to_json(const canext_sheet* s, char** out);

/* Stabilizer lattice of h and a strictly positive lattice vector if any. */
CANEXT_API canext_status canext_stabilizer_json(const canext_model* m, const int64_t* h, size_t hlen,
                                                char** out);

/* Limit points of the sheet over the origin. */
CANEXT_API canext_status canext_limits_json(const canext_model* m, const int64_t* h, size_t hlen,
                                            char** out);

/* Sample the sheet at `samples` seeded base points and check both equation
 * families against tol; CANEXT_ERROR_VERIFY if the check fails. */
CANEXT_API canext_status canext_verify_json(const canext_model* m, const canext_sheet* s,
                                            int samples, double tol, uint64_t seed, char** out);

/* Residuals of one explicit point (t, v) against the sheet equations. */
CANEXT_API canext_status canext_verify_point_json(const canext_sheet* s, const double* t_re,
                                                  const double* t_im, size_t tlen, const double* v_re,
                                                  const double* v_im, size_t vlen, double tol,
                                                  char** out);

/* Arc table t = 2^-1, ..., 2^-mmax for the relation a (all a_j >= 1,
 * sum a_j N_j h = 0) and twist w (complex, length n; NULL for zero). */
CANEXT_API canext_status canext_arc_json(const canext_model* m, const int64_t* h, size_t hlen,
                                         const int64_t* a, size_t alen, const double* w_re,
                                         const double* w_im, size_t wlen, int mmax, char** out);

/* Bounded search for a with T^a h0 = h1. */
CANEXT_API canext_status canext_orbit_json(const canext_model* m, const int64_t* h0,
                                           const int64_t* h1, size_t hlen, long bound, char** out);

/* Representatives of sheets whose closure passes through (0, v). */
CANEXT_API canext_status canext_components_json(const canext_model* m, const double* v_re,
                                                const double* v_im, size_t vlen, long h_bound,
                                                long orbit_bound, double tol, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CANEXT_H */

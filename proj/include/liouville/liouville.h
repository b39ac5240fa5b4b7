#ifndef LIOUVILLE_LIOUVILLE_H
#define LIOUVILLE_LIOUVILLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(LV_BUILDING_LIBRARY)
#define LV_API __attribute__((visibility("default")))
#else
#define LV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lv_status {
  LV_OK = 0,
  LV_INVALID_INPUT,
  LV_INVALID_RADIUS,
  LV_NOT_SOLVABLE,
  LV_POLE_OF_PROJECTION,
  LV_NOT_INTEGRABLE,
  LV_SINGULAR_MISMATCH,
  LV_TAIL_ERROR,
  LV_UNDER_RESOLVED,
  LV_NOT_HOLOMORPHIC,
  LV_NUMERICAL_INCONSISTENCY,
  LV_TIE_BREAK_AMBIGUOUS,
  LV_NOT_GENERIC_POSITION,
  LV_JITTER_TOO_LARGE,
  LV_ARRANGEMENT_CORRUPT,
  LV_RAY_CAST_FAILED,
  LV_DECOMPOSITION_CORRUPT,
  LV_WRONG_ARITY,
  LV_CENTER_UNSTABLE,
  LV_INCONCLUSIVE_LIMIT,
  LV_INCONCLUSIVE_MESH,
  LV_THEOREM_VIOLATION,
  LV_UNKNOWN_FIXTURE,
  LV_INTERNAL
} lv_status;

typedef struct lv_grid lv_grid;
typedef struct lv_curve lv_curve;
typedef struct lv_result lv_result;

LV_API const char* lv_version(void);
LV_API const char* lv_status_name(lv_status status);
/* 0 ok, 1 input error, 2 numerical guard, 3 theorem violation */
LV_API int lv_exit_code(lv_status status);
/* Message of the last failure on this thread; "" after a success. */
LV_API const char* lv_last_error(void);
LV_API void lv_free_string(char* s);
/* Comma-separated names. */
LV_API const char* lv_command_names(void);
LV_API const char* lv_fixture_names(void);

/* Samples at theta_j = 2 pi j / n - pi; im may be NULL for real data. */
LV_API lv_status lv_grid_create(const double* re, const double* im, size_t n, lv_grid** out);
LV_API void lv_grid_free(lv_grid* g);
LV_API size_t lv_grid_size(const lv_grid* g);
/* Copies n values into re (and im when not NULL). */
LV_API lv_status lv_grid_values(const lv_grid* g, double* re, double* im);

LV_API lv_status lv_half_laplacian(const lv_grid* g, lv_grid** out);
LV_API lv_status lv_hilbert(const lv_grid* g, lv_grid** out);
LV_API lv_status lv_poisson_extend(const lv_grid* g, double r, lv_grid** out);
LV_API lv_status lv_green_convolve(const lv_grid* g, lv_grid** out);

/* xy holds count interleaved vertices x0 y0 x1 y1 ...; the curve is closed.
   Vertices where the tangent turns sharply must be listed in corners (may be
   NULL when n_corners is 0); their one-sided tangents are the edge directions. */
LV_API lv_status lv_curve_create(const double* xy, size_t count, const size_t* corners, size_t n_corners,
                                 lv_curve** out);
LV_API lv_status lv_curve_parse(const char* json, lv_curve** out);
LV_API void lv_curve_free(lv_curve* c);

LV_API lv_status lv_rotation_index(const lv_curve* c, int* index, double* total_turning);
LV_API lv_status lv_self_intersections(const lv_curve* c, size_t* count);
/* Canonical word text such as "a0- b1+"; release with lv_free_string. */
LV_API lv_status lv_blank_word(const lv_curve* c, uint64_t seed, char** word);
LV_API lv_status lv_seifert(const lv_curve* c, size_t* circles, int* index_sum);
LV_API lv_status lv_word_contract(const char* word, int* contracts);

/* Runs a CLI command with a JSON object of options. */
LV_API lv_status lv_run(const char* command, const char* config_json, lv_result** out);
LV_API const char* lv_result_json(const lv_result* r);
/* "" when the command has no trace or table. */
LV_API const char* lv_result_trace(const lv_result* r);
LV_API const char* lv_result_table(const lv_result* r);
LV_API void lv_result_free(lv_result* r);

#ifdef __cplusplus
}
#endif

#endif

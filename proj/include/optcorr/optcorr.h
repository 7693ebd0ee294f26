#ifndef OPTCORR_H
#define OPTCORR_H

/* C interface to the optcorr library: monotone-cone discovery, optimized
 * correlation measure estimates and the verification suites.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns an optcorr_status; on failure a message is
 * available from optcorr_last_error() on the calling thread. Strings returned
 * through char** are owned by the caller and released with optcorr_string_free.
 *
 * Alpha vectors have 7 entries in the order A, B, V, AB, AV, BV, ABV. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define OPTCORR_API __declspec(dllexport)
#else
#define OPTCORR_API __attribute__((visibility("default")))
#endif

typedef enum {
  OPTCORR_OK = 0,
  OPTCORR_ERR_INVALID_ARGUMENT = 1,
  OPTCORR_ERR_OVERLAP = 2,
  OPTCORR_ERR_EMPTY_ARGUMENT = 3,
  OPTCORR_ERR_DIMENSION_MISMATCH = 4,
  OPTCORR_ERR_ITERATION_LIMIT = 5,
  OPTCORR_ERR_INFINITE_MEASURE = 6,
  OPTCORR_ERR_PARSE = 7,
  OPTCORR_ERR_INVALID_STATE = 8,
  OPTCORR_ERR_UNKNOWN_NAME = 9,
  OPTCORR_ERR_UNCOVERED = 10,
  OPTCORR_ERR_NUMERICAL = 11,
  OPTCORR_ERR_IO = 12,
  OPTCORR_ERR_INTERNAL = 99
} optcorr_status;

typedef enum { OPTCORR_FORMAT_JSON = 0, OPTCORR_FORMAT_CSV = 1, OPTCORR_FORMAT_TABLE = 2 } optcorr_format;

typedef struct optcorr_state optcorr_state;
typedef struct optcorr_discovery optcorr_discovery;
typedef struct optcorr_estimate optcorr_estimate;
typedef struct optcorr_report optcorr_report;

OPTCORR_API const char* optcorr_version(void);
/* Message of the last failed call on this thread; empty string if none. */
OPTCORR_API const char* optcorr_last_error(void);
OPTCORR_API const char* optcorr_status_name(optcorr_status status);
OPTCORR_API void optcorr_string_free(char* s);

/* ---- states ---- */

/* Named-state grammar: bell | classical:p1,p2,... | antisym:d |
 * symmetric-random:d,seed | pure-random:d,seed | mixed-random:dA,dB,seed |
 * local-random:dA,dB,seed | product:<spec>;<spec> */
OPTCORR_API optcorr_status optcorr_state_named(const char* spec, optcorr_state** out);
OPTCORR_API optcorr_status optcorr_state_from_json(const char* json, optcorr_state** out);
OPTCORR_API optcorr_status optcorr_state_load(const char* path, optcorr_state** out);
OPTCORR_API optcorr_status optcorr_state_to_json(const optcorr_state* state, char** out);
OPTCORR_API optcorr_status optcorr_state_save(const optcorr_state* state, const char* path);
OPTCORR_API int optcorr_state_total_dim(const optcorr_state* state);
/* I(A:B) in bits; the state must have exactly the subsystems A and B. */
OPTCORR_API optcorr_status optcorr_state_mutual_information(const optcorr_state* state, double* out);
OPTCORR_API void optcorr_state_free(optcorr_state* state);

/* ---- alpha helpers ---- */

/* name is one of P, Q, R, sq. */
OPTCORR_API optcorr_status optcorr_named_alpha(const char* name, double alpha[7]);
OPTCORR_API int optcorr_finiteness_check(const double alpha[7]);
OPTCORR_API void optcorr_dual_alpha(const double alpha[7], double out[7]);

/* ---- discovery ---- */

/* cone is "00", "10", "01" or "11". When classify is nonzero every row gets an
 * advisory tag from a short estimator pass seeded by seed. */
OPTCORR_API optcorr_status optcorr_discover(const char* cone, int finite, int classify, uint64_t seed,
                                            optcorr_discovery** out);
OPTCORR_API size_t optcorr_discovery_row_count(const optcorr_discovery* d);
/* Row i of the generating set; fails when an entry does not fit in int64. */
OPTCORR_API optcorr_status optcorr_discovery_row(const optcorr_discovery* d, size_t i, int64_t row[7]);
OPTCORR_API const char* optcorr_discovery_label(const optcorr_discovery* d);
/* Compares against the reference tables. *match is 1 on exact set equality;
 * *diff (optional) receives missing/unexpected rows, one per line. */
OPTCORR_API optcorr_status optcorr_discovery_compare_paper(const optcorr_discovery* d, int* match, char** diff);
/* config_json (optional) is embedded verbatim in json and csv output. */
OPTCORR_API optcorr_status optcorr_discovery_render(const optcorr_discovery* d, optcorr_format format,
                                                   const char* config_json, char** out);
OPTCORR_API void optcorr_discovery_free(optcorr_discovery* d);

/* ---- estimation ---- */

typedef struct {
  int d_v;       /* 0: d_A * d_B */
  int d_f;       /* 0: d_V * d_E */
  int restarts;  /* random restarts on top of the fixed warm starts */
  int max_iters;
  uint64_t seed;
  int threads;
} optcorr_estimator_config;

OPTCORR_API void optcorr_estimator_config_default(optcorr_estimator_config* config);
OPTCORR_API optcorr_status optcorr_evaluate(const double alpha[7], const optcorr_state* state,
                                            const optcorr_estimator_config* config, optcorr_estimate** out);
OPTCORR_API double optcorr_estimate_value(const optcorr_estimate* e);
/* Returns 0 and leaves *out untouched when no certified bound exists. */
OPTCORR_API int optcorr_estimate_lower_bound(const optcorr_estimate* e, double* out);
OPTCORR_API int optcorr_estimate_converged(const optcorr_estimate* e);
OPTCORR_API int optcorr_estimate_d_v(const optcorr_estimate* e);
OPTCORR_API optcorr_status optcorr_estimate_to_json(const optcorr_estimate* e, const char* config_json, char** out);
OPTCORR_API void optcorr_estimate_free(optcorr_estimate* e);

/* ---- verification ---- */

/* suite: tables, bounds, additivity, monotonicity, domination, duality,
 * closed-forms or all. */
OPTCORR_API optcorr_status optcorr_verify(const char* suite, uint64_t seed, int threads, optcorr_report** out);
OPTCORR_API int optcorr_report_passed(const optcorr_report* r);
OPTCORR_API size_t optcorr_report_count(const optcorr_report* r);
OPTCORR_API optcorr_status optcorr_report_text(const optcorr_report* r, char** out);
OPTCORR_API optcorr_status optcorr_report_json(const optcorr_report* r, const char* config_json, char** out);
OPTCORR_API void optcorr_report_free(optcorr_report* r);

#ifdef __cplusplus
}
#endif

#endif

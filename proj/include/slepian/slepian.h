#ifndef SLEPIAN_SLEPIAN_H
#define SLEPIAN_SLEPIAN_H

/* C interface to the concentration-operator library. Handles are opaque;
 * every call returns an sk_status and leaves a message for sk_last_error()
 * on failure. Complex vectors are interleaved (re, im) doubles. */

#include <stddef.h>
#include <stdint.h>

#if defined(SLEPIAN_BUILDING_LIBRARY)
#define SK_API __attribute__((visibility("default")))
#else
#define SK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sk_status {
  SK_OK = 0,
  SK_ERROR = 1,             /* anything not listed below */
  SK_CONFIG_ERROR = 2,
  SK_PARTIAL = 3,           /* varying masks stopped before the requested count */
  SK_ORACLE_FAILURE = 4,
  SK_INVALID_ARGUMENT = 5,  /* null handle or pointer, bad size */
  SK_DOMAIN_ERROR = 6,
  SK_IO_ERROR = 7,
  SK_RESOURCE_ERROR = 8,    /* dense work above the memory cap */
  SK_CONVERGENCE_ERROR = 9
} sk_status;

typedef struct sk_config sk_config;
typedef struct sk_problem sk_problem;

typedef struct sk_run_options {
  const char* out_dir;  /* NULL: $SLEPIAN_KIT_OUT, then [output] dir, then ./out */
  int timestamp;        /* nonzero writes a generation time into SVG files */
  int has_seed;
  uint64_t seed;
} sk_run_options;

/* Message of the last failed call on this thread; never NULL. */
SK_API const char* sk_last_error(void);
SK_API const char* sk_version(void);
SK_API const char* sk_status_name(sk_status status);

SK_API sk_status sk_config_load(const char* path, sk_config** out);
SK_API sk_status sk_config_parse(const char* text, sk_config** out);
SK_API sk_status sk_config_set(sk_config* cfg, const char* section, const char* key, const char* value);
SK_API sk_status sk_config_validate(const sk_config* cfg);
SK_API void sk_config_free(sk_config* cfg);

/* Runs one of assemble, eig, varying-masks, oracle-check, plot. The log
 * callback receives the progress text; it may be NULL. */
typedef void (*sk_log_fn)(const char* text, void* user);
SK_API sk_status sk_run_command(const char* command, const sk_config* cfg, const sk_run_options* options,
                                sk_log_fn log, void* user);

/* The grid and mask families of a configuration. */
SK_API sk_status sk_problem_create(const sk_config* cfg, sk_problem** out);
SK_API void sk_problem_free(sk_problem* problem);
SK_API sk_status sk_problem_size(const sk_problem* problem, int64_t* size);
/* out = K(eps) in, both of length 2 * size. */
SK_API sk_status sk_problem_apply(const sk_problem* problem, double eps, const double* in, double* out);
/* Largest `count` eigenvalues of K(eps), descending, from the dense matrix. */
SK_API sk_status sk_problem_dense_eigenvalues(const sk_problem* problem, double eps, double* values, size_t count);

/* Decreasing log-uniform schedule with `steps` points. */
SK_API sk_status sk_epsilon_schedule(double eps_min, double eps_max, int steps, double* out);
SK_API double sk_mu(double eps);

#ifdef __cplusplus
}
#endif

#endif

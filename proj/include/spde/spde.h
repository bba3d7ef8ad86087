/*
 * C API of the spdelab spectral SPDE laboratory.
 *
 * The library simulates linear and semilinear stochastic PDEs with additive
 * noise on the torus by exact per-mode Gaussian sampling and exponential
 * integrators, and verifies quantitative covariance, regularity,
 * invariant-measure and ergodicity statements about them.
 *
 * All objects are opaque handles; every function returns a status code
 * (spde_status). On failure, spde_last_error() describes the most recent
 * error of the calling thread.
 */

#ifndef SPDE_SPDE_H
#define SPDE_SPDE_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32
#define SPDE_API __declspec(dllexport)
#else
#define SPDE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spde_status {
  SPDE_OK = 0,
  SPDE_CHECKS_FAILED = 1, /* experiment ran, at least one check failed */
  SPDE_ERR_CONFIG = 2,    /* invalid configuration */
  SPDE_ERR_RUNTIME = 3,   /* numerical or I/O failure */
  SPDE_ERR_ARGUMENT = 4   /* null handle, bad index, ... */
} spde_status;

typedef struct spde_config spde_config;
typedef struct spde_report spde_report;

/* One verification row of a report. `name` and `provenance` stay owned by
 * the report and are valid until it is freed. */
typedef struct spde_row_view {
  const char* name;
  double empirical;
  double std_error;
  double target;
  double tolerance;
  int pass;                /* 1 pass, 0 fail */
  const char* provenance;  /* "paper-formula" | "derived-oracle" | "trivial" */
} spde_row_view;

SPDE_API const char* spde_version(void);

/* Thread-local description of the last failure; empty string if none. */
SPDE_API const char* spde_last_error(void);

/* ------------------------------------------------------------------ */
/* configuration                                                       */

/* Parses flat "key = value" text ('#' comments). On SPDE_ERR_CONFIG the
 * field-level messages are available through spde_last_error(). */
SPDE_API spde_status spde_config_parse(const char* text, spde_config** out);
SPDE_API spde_status spde_config_parse_file(const char* path, spde_config** out);
SPDE_API spde_status spde_config_default(const char* kind, int quick,
                                         spde_config** out);
SPDE_API void spde_config_free(spde_config* config);

/* Canonical text echo of a config; caller frees with spde_string_free. */
SPDE_API spde_status spde_config_text(const spde_config* config, char** out);

/* Commented template for a kind; caller frees with spde_string_free. */
SPDE_API spde_status spde_config_template(const char* kind, char** out);

/* Number of known experiment kinds / name of the i-th kind (static). */
SPDE_API size_t spde_kind_count(void);
SPDE_API const char* spde_kind_name(size_t index);

SPDE_API void spde_string_free(char* str);

/* ------------------------------------------------------------------ */
/* running                                                             */

/* Runs the configured experiment. Returns SPDE_OK when every check passed,
 * SPDE_CHECKS_FAILED when the run completed with failing rows. A report is
 * produced in both cases. */
SPDE_API spde_status spde_run(const spde_config* config, spde_report** out);

/* Full verification battery over all experiment kinds plus the library
 * property suites (quick != 0 runs the reduced-size variants). */
SPDE_API spde_status spde_verify_all(int quick, spde_report** out);

/* ------------------------------------------------------------------ */
/* reports                                                             */

SPDE_API void spde_report_free(spde_report* report);
SPDE_API size_t spde_report_row_count(const spde_report* report);
SPDE_API spde_status spde_report_row(const spde_report* report, size_t index,
                                     spde_row_view* out);
SPDE_API int spde_report_overall_pass(const spde_report* report);
SPDE_API double spde_report_wall_seconds(const spde_report* report);

/* Deterministic CSV of the rows; caller frees with spde_string_free. */
SPDE_API spde_status spde_report_csv(const spde_report* report, char** out);

/* Human-readable per-row summary; caller frees with spde_string_free. */
SPDE_API spde_status spde_report_summary(const spde_report* report, char** out);

/* Writes report.csv and bundle.txt under dir (created if needed). */
SPDE_API spde_status spde_report_write(const spde_report* report,
                                       const char* dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPDE_SPDE_H */

/*
 * krylov_gauss: spread complexity of bosonic and fermionic Gaussian states.
 *
 * C interface of the shared library. All entry points return a kg_status
 * code; on any failure kg_last_error() carries a one-line message for the
 * calling thread. Objects are opaque handles owned by the caller and
 * released with the matching *_free function.
 *
 * Typical use:
 *
 *   kg_config* cfg = kg_config_new();
 *   kg_config_set(cfg, "family", "coherent");
 *   kg_config_set(cfg, "alpha", "1");
 *   kg_config_set(cfg, "tmax", "2");
 *   kg_table* out = NULL;
 *   if (kg_run(cfg, "complexity", &out) == KG_OK)
 *       kg_table_write_csv(out, "coherent.csv");
 *   kg_table_free(out);
 *   kg_config_free(cfg);
 */

#ifndef KRYLOV_GAUSS_H
#define KRYLOV_GAUSS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kg_config kg_config;
typedef struct kg_table kg_table;

/* Mirrors the CLI exit codes. */
typedef enum kg_status {
  KG_OK = 0,
  KG_ERR_VALIDATION = 1, /* bad parameters, unknown keys, malformed input */
  KG_ERR_NUMERIC = 2,    /* truncation, moment inconsistency, route mismatch */
  KG_ERR_IO = 3          /* unreadable or unwritable paths */
} kg_status;

const char* kg_version(void);

/* Message describing the most recent failure on this thread. Never NULL. */
const char* kg_last_error(void);

/* ------------------------------------------------------------------ */
/* run configuration: a bag of key=value settings                      */
/* ------------------------------------------------------------------ */

kg_config* kg_config_new(void);
void kg_config_free(kg_config* cfg);

/* Keys: family, alpha, eta, r, theta, phi, lambda, lambda_r, omega, p,
 * mass, cutoff, kind, tmax, steps, dim, order, precision, output, format,
 * input, fast. Values are validated immediately. */
int kg_config_set(kg_config* cfg, const char* key, const char* value);

/* Loads key=value lines ('#' starts a comment). Later kg_config_set calls
 * override what the file provided. */
int kg_config_load_file(kg_config* cfg, const char* path);

/* ------------------------------------------------------------------ */
/* commands                                                            */
/* ------------------------------------------------------------------ */

/* command is one of: complexity, bound, moments, sweep, plot.
 * On success *out receives a table owned by the caller. A warning emitted by
 * the run (e.g. coefficient recovery stopped early) is available through
 * kg_last_warning() until the next kg_run on this thread. */
int kg_run(kg_config* cfg, const char* command, kg_table** out);

const char* kg_last_warning(void);

/* Runs the acceptance battery. *failures receives the number of failed
 * criteria; *report (optional) a malloc'd text to free with kg_string_free.
 * Returns KG_OK when the battery ran, regardless of criterion outcomes. */
int kg_verify(kg_config* cfg, int fast, char** report, int* failures);

void kg_string_free(char* text);

/* ------------------------------------------------------------------ */
/* result tables                                                       */
/* ------------------------------------------------------------------ */

size_t kg_table_rows(const kg_table* t);
size_t kg_table_cols(const kg_table* t);
const char* kg_table_column_name(const kg_table* t, size_t col);

/* Rendered cell text exactly as it appears in the CSV ("" for absent). */
const char* kg_table_cell(const kg_table* t, size_t row, size_t col);
double kg_table_value(const kg_table* t, size_t row, size_t col);

int kg_table_write_csv(const kg_table* t, const char* path);
int kg_table_write_svg(const kg_table* t, const char* path);
int kg_table_read_csv(const char* path, kg_table** out);

void kg_table_free(kg_table* t);

#ifdef __cplusplus
}
#endif

#endif /* KRYLOV_GAUSS_H */

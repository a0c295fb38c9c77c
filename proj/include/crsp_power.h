/* SPDX-License-Identifier: Apache-2.0
 *
 * C API of the control-power analyzer for controlled remote state
 * preparation schemes. The library evaluates entangled channels and
 * protocols by the receiver's average fidelity when a controller withholds
 * cooperation, compares the resulting control power against the classical
 * limit, and audits controller entropies.
 *
 * All functions are thread-compatible: distinct engine handles may be used
 * concurrently; a single handle must not be shared across threads.
 */

#ifndef CRSP_POWER_H
#define CRSP_POWER_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CRSP_API __declspec(dllexport)
#else
#define CRSP_API __attribute__((visibility("default")))
#endif

typedef enum crsp_status {
  CRSP_OK = 0,
  CRSP_ERR_NUMERIC = 1,          /* degenerate protocol or numeric failure */
  CRSP_ERR_INVALID_ARGUMENT = 2, /* bad command, protocol id or configuration */
  CRSP_ERR_NULL_POINTER = 3
} crsp_status;

/* Opaque handles. */
typedef struct crsp_engine crsp_engine;
typedef struct crsp_result crsp_result;

/* Library version string, e.g. "1.0.0". */
CRSP_API const char* crsp_version(void);

CRSP_API crsp_engine* crsp_engine_create(void);
CRSP_API void crsp_engine_destroy(crsp_engine* engine);

/* Message of the last failed call on this engine; empty string if none.
 * Valid until the next call on the same engine. */
CRSP_API const char* crsp_engine_last_error(const crsp_engine* engine);

/* Runs a command with a JSON configuration and returns a rendered report.
 *
 * Commands and configuration keys:
 *   "analyze"        protocol (P1..P7), params {b2|c|d|a2|N|M|dim}, ensemble
 *                    ("haar"|"equatorial"), samples, seed (required),
 *                    format ("json"|"csv"|"text"), tol, threads
 *   "sweep"          analyze keys plus param (name) and grid (number array)
 *   "entropy-table"  ms_d, pghz_a2, format
 *   "catalog"        format
 *
 * On success stores a result handle in *out_result (caller frees it with
 * crsp_result_destroy). Output is deterministic: identical configurations
 * produce byte-identical report text. */
CRSP_API crsp_status crsp_engine_run(crsp_engine* engine, const char* command,
                                     const char* config_json, crsp_result** out_result);

/* Rendered report text (NUL-terminated, owned by the result handle). */
CRSP_API const char* crsp_result_text(const crsp_result* result);
CRSP_API size_t crsp_result_size(const crsp_result* result);
CRSP_API void crsp_result_destroy(crsp_result* result);

/* Classical fidelity limit 2 / (1 + D) for a D-dimensional target. */
CRSP_API crsp_status crsp_classical_limit(int dimension, double* out_value);

/* Control-power lower bound (D - 1) / (D + 1); together with the classical
 * limit it sums to exactly 1. */
CRSP_API crsp_status crsp_power_bound(int dimension, double* out_value);

/* Stable name for a status code, and the process exit code a CLI should
 * map it to (0 success, 1 numeric failure, 2 usage error). */
CRSP_API const char* crsp_status_name(crsp_status status);
CRSP_API int crsp_status_exit_code(crsp_status status);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CRSP_POWER_H */

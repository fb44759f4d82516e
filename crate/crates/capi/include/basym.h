#ifndef BASYM_H
#define BASYM_H

/* Generated by cbindgen from basym-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum {
  BASYM_OK = 0,
  BASYM_NULL_ARGUMENT = 1,
  BASYM_INVALID_UTF8 = 2,
  BASYM_PARSE_ERROR = 3,
  BASYM_UNKNOWN_COMMAND = 4,
  BASYM_COMPUTE_ERROR = 5,
  BASYM_PANIC = 6,
} BasymStatus;

/**
 * Opaque session handle.
 */
typedef struct BasymSession BasymSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *basym_version(void);

/**
 * Copy of the last error message on this thread, or null when none.
 * Free the result with `basym_string_free`.
 */
char *basym_last_error(void);

/**
 * Parses a session source into a new handle.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out_session` a valid
 * pointer; the handle must be released with `basym_session_free`.
 */
BasymStatus basym_session_parse(const char *source, BasymSession **out_session);

/**
 * Releases a session handle. Null is a no-op.
 *
 * # Safety
 * `session` must come from `basym_session_parse` and not be used afterwards.
 */
void basym_session_free(BasymSession *session);

/**
 * Overrides the window of a session: exponent range [t_lo, t_hi] for every
 * block and, when positive, the degree-weight cap.
 *
 * # Safety
 * `session` must be a live handle from `basym_session_parse`.
 */
BasymStatus basym_session_window(BasymSession *session, int64_t t_lo, int64_t t_hi, int64_t wcap);

/**
 * Runs a command (betti | rees | gb | stanley | shape | verify) and returns
 * the JSON report as a newly allocated string in `out_json`; free it with
 * `basym_string_free`. `ell` below zero selects the command default.
 *
 * # Safety
 * `session` must be a live handle; `command` a NUL-terminated string;
 * `out_json` a valid pointer.
 */
BasymStatus basym_run_json(const BasymSession *session,
                           const char *command,
                           int32_t ell,
                           char **out_json);

/**
 * Frees a string allocated by this library. Null is a no-op.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void basym_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BASYM_H */

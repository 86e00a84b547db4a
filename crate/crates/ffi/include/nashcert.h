#ifndef NASHCERT_H
#define NASHCERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Branch of the Case-2 change of coordinates.
 */
typedef enum NcSign {
  NC_SIGN_DEFAULT = 0,
  NC_SIGN_PLUS = 1,
  NC_SIGN_MINUS = 2,
} NcSign;

/**
 * Result code of every fallible entry point.
 */
typedef enum NcStatus {
  NC_STATUS_OK = 0,
  NC_STATUS_NULL_POINTER = 1,
  NC_STATUS_INVALID_UTF8 = 2,
  NC_STATUS_PARSE_ERROR = 3,
  NC_STATUS_SEMANTIC_ERROR = 4,
  NC_STATUS_PANIC = 5,
} NcStatus;

/**
 * Outcome of a certificate.
 */
typedef enum NcVerdict {
  NC_VERDICT_VERIFIED = 0,
  NC_VERDICT_INCOMPLETE = 1,
  NC_VERDICT_FAILED = 2,
} NcVerdict;

/**
 * A computed cAx/2 certificate.
 */
typedef struct NcCertificate NcCertificate;

/**
 * A parsed `.sing` input.
 */
typedef struct NcSingularity NcSingularity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *nc_version(void);

/**
 * Description of the last failure on this thread, or null. Valid until the
 * next library call on the same thread; do not free.
 */
const char *nc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void nc_string_free(char *s);

/**
 * Parses `.sing` text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is valid for writes.
 */
enum NcStatus nc_singularity_parse(const char *text, struct NcSingularity **out);

/**
 * Canonical `.sing` text of a parsed input.
 *
 * # Safety
 * `sing` is a live handle; `out` is valid for writes.
 */
enum NcStatus nc_singularity_print(const struct NcSingularity *sing, char **out);

/**
 * Releases a parsed input. Null is ignored.
 *
 * # Safety
 * `sing` is null or a live handle from [`nc_singularity_parse`].
 */
void nc_singularity_free(struct NcSingularity *sing);

/**
 * Runs the cAx/2 certificate pipeline. The file's weight, if any, replaces
 * the selected weight.
 *
 * # Safety
 * `sing` is a live handle; `out` is valid for writes.
 */
enum NcStatus nc_certify(const struct NcSingularity *sing,
                         enum NcSign sign,
                         struct NcCertificate **out);

/**
 * Verdict of a certificate.
 *
 * # Safety
 * `cert` is a live handle; `out` is valid for writes.
 */
enum NcStatus nc_certificate_verdict(const struct NcCertificate *cert, enum NcVerdict *out);

/**
 * Discrepancy of the exceptional divisor as `"p/q"`.
 *
 * # Safety
 * `cert` is a live handle; `out` is valid for writes.
 */
enum NcStatus nc_certificate_discrepancy(const struct NcCertificate *cert, char **out);

/**
 * The certificate as a JSON report.
 *
 * # Safety
 * `cert` is a live handle; `out` is valid for writes.
 */
enum NcStatus nc_certificate_json(const struct NcCertificate *cert, char **out);

/**
 * Releases a certificate. Null is ignored.
 *
 * # Safety
 * `cert` is null or a live handle from [`nc_certify`].
 */
void nc_certificate_free(struct NcCertificate *cert);

/**
 * Nash valuations of a cone as a JSON report. `lattice` is `Z^n` or
 * `1/m(a,...)`, `cone` is `std` or `(..);(..)`, `bound` a rational level
 * bound and `box_bound` the initial box size.
 *
 * # Safety
 * String arguments are NUL-terminated; `out` is valid for writes.
 */
enum NcStatus nc_toric_nash_json(const char *lattice,
                                 const char *cone,
                                 const char *bound,
                                 uint64_t box_bound,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NASHCERT_H */

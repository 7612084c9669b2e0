#ifndef NEWTONPOLY_H
#define NEWTONPOLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes shared by every entry point.
 */
typedef enum NpStatus {
  NP_STATUS_OK = 0,
  NP_STATUS_NULL_ARGUMENT = 1,
  NP_STATUS_INVALID_UTF8 = 2,
  NP_STATUS_PARSE_ERROR = 3,
  NP_STATUS_PIPELINE_ERROR = 4,
  /*
   A rational does not fit the 64-bit output slots.
   */
  NP_STATUS_OVERFLOW = 5,
  /*
   An internal panic was caught at the boundary.
   */
  NP_STATUS_PANIC = 6,
} NpStatus;

/*
 Which exact invariant [`np_invariant`] should return.
 */
typedef enum NpInvariant {
  NP_INVARIANT_DISTANCE = 0,
  NP_INVARIANT_HEIGHT = 1,
  NP_INVARIANT_R_HEIGHT = 2,
  NP_INVARIANT_DECAY_RATE = 3,
  NP_INVARIANT_RESTRICTION_PC_PRIME = 4,
  NP_INVARIANT_RESTRICTION_PC = 5,
  NP_INVARIANT_CONTACT_INDEX = 6,
} NpInvariant;

/*
 Opaque polynomial handle.
 */
typedef struct NpPolynomial NpPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses `text` (NUL-terminated UTF-8) into a new handle stored in `*out`.

 # Safety
 `text` must be a valid C string and `out` a valid pointer.
 */
enum NpStatus np_polynomial_parse(const char *text, struct NpPolynomial **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `p` must come from [`np_polynomial_parse`] and not have been freed.
 */
void np_polynomial_free(struct NpPolynomial *p);

/*
 Writes the canonical form of the polynomial to `*out`.

 # Safety
 `p` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_polynomial_to_string(const struct NpPolynomial *p, char **out);

/*
 Runs the full pipeline and writes the JSON report (without timestamp) to `*out`.

 # Safety
 `p` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_analyze_json(const struct NpPolynomial *p, char **out);

/*
 Computes one exact invariant as `*num / *den`, and the Varchenko exponent in `*nu`
 when `nu` is non-null. The r-height of an adapted phase does not exist and yields
 `PipelineError`.

 # Safety
 `p` must be a live handle; `num` and `den` must be valid pointers.
 */
enum NpStatus np_invariant(const struct NpPolynomial *p,
                           enum NpInvariant which,
                           int64_t *num,
                           int64_t *den,
                           uint8_t *nu);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void np_string_free(char *s);

/*
 The message for the last failed call on this thread, or null after a success.
 The pointer stays valid until the next call into the library on this thread.
 */
const char *np_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *np_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEWTONPOLY_H */

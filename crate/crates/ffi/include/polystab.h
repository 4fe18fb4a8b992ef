#ifndef POLYSTAB_H
#define POLYSTAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum PolystabStatus {
  POLYSTAB_STATUS_OK = 0,
  POLYSTAB_STATUS_NULL_POINTER = 1,
  POLYSTAB_STATUS_INVALID_UTF8 = 2,
  POLYSTAB_STATUS_PARSE = 3,
  POLYSTAB_STATUS_EMPTY_SYSTEM = 4,
  POLYSTAB_STATUS_NOT_ZERO_DIMENSIONAL = 5,
  POLYSTAB_STATUS_NOT_STABILIZABLE = 6,
  POLYSTAB_STATUS_ITERATION_CAP = 7,
  POLYSTAB_STATUS_INVALID_ARGUMENT = 8,
  POLYSTAB_STATUS_INTERNAL = 9,
} PolystabStatus;

/*
 A stable polynomial with its cofactors and certificate.
 */
typedef struct PolystabStable PolystabStable;

/*
 A parsed polynomial system.
 */
typedef struct PolystabSystem PolystabSystem;

/*
 Outcome of the stabilizability test.
 */
typedef struct PolystabVerdict PolystabVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer is
 valid until the next `polystab_*` call on the same thread.
 */
const char *polystab_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void polystab_string_free(char *s);

/*
 Library version as a static string.
 */
const char *polystab_version(void);

/*
 Parses a problem text (`vars: z1 z2` followed by one polynomial per line).

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PolystabStatus polystab_system_parse(const char *text, struct PolystabSystem **out);

/*
 # Safety
 `sys` must be null or a live handle from [`polystab_system_parse`].
 */
void polystab_system_free(struct PolystabSystem *sys);

/*
 Number of declared variables, 0 for a null handle.

 # Safety
 `sys` must be null or a live handle.
 */
size_t polystab_system_num_vars(const struct PolystabSystem *sys);

/*
 Number of polynomials, 0 for a null handle.

 # Safety
 `sys` must be null or a live handle.
 */
size_t polystab_system_num_polys(const struct PolystabSystem *sys);

/*
 Decides whether the variety avoids the closed unit polydisc.

 # Safety
 `sys` must be a live handle; `out` must be writable.
 */
enum PolystabStatus polystab_is_stabilizable(const struct PolystabSystem *sys,
                                             struct PolystabVerdict **out);

/*
 1 if stabilizable, 0 if not, -1 for a null handle.

 # Safety
 `v` must be null or a live handle.
 */
int32_t polystab_verdict_stabilizable(const struct PolystabVerdict *v);

/*
 Number of witness points inside the polydisc.

 # Safety
 `v` must be null or a live handle.
 */
size_t polystab_verdict_num_witnesses(const struct PolystabVerdict *v);

/*
 JSON report including witnesses; free with [`polystab_string_free`].

 # Safety
 `v` must be null or a live handle.
 */
char *polystab_verdict_to_json(const struct PolystabVerdict *v);

/*
 # Safety
 `v` must be null or a live handle.
 */
void polystab_verdict_free(struct PolystabVerdict *v);

/*
 Builds a stable polynomial in the ideal. `initial_eps` is a rational such
 as `"1/2"` or null for the default; `max_halvings` 0 selects the default.

 # Safety
 `sys` must be a live handle, `initial_eps` null or NUL-terminated, `out`
 writable.
 */
enum PolystabStatus polystab_stable_polynomial(const struct PolystabSystem *sys,
                                               const char *initial_eps,
                                               uint32_t max_halvings,
                                               struct PolystabStable **out);

/*
 The stable polynomial `s` in text form.

 # Safety
 `r` must be null or a live handle.
 */
char *polystab_stable_s(const struct PolystabStable *r);

/*
 Number of cofactors (one per input polynomial).

 # Safety
 `r` must be null or a live handle.
 */
size_t polystab_stable_num_cofactors(const struct PolystabStable *r);

/*
 Cofactor `i` in text form, or null when out of range.

 # Safety
 `r` must be null or a live handle.
 */
char *polystab_stable_cofactor(const struct PolystabStable *r, size_t i);

/*
 Exponent `m` with `s^m = Σ u_i p_i`; 0 for a null handle.

 # Safety
 `r` must be null or a live handle.
 */
uint32_t polystab_stable_power(const struct PolystabStable *r);

/*
 Full JSON report.

 # Safety
 `r` must be null or a live handle.
 */
char *polystab_stable_to_json(const struct PolystabStable *r);

/*
 # Safety
 `r` must be null or a live handle.
 */
void polystab_stable_free(struct PolystabStable *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYSTAB_H */

#ifndef SUPERCIRCLE_H
#define SUPERCIRCLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of an FFI call.
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  // The input was well formed but a mathematical check failed.
  SC_STATUS_MATH_FAILURE = 1,
  // Malformed JSON, unknown tag or unsupported request.
  SC_STATUS_INVALID_INPUT = 2,
  SC_STATUS_NULL_POINTER = 3,
  // A Rust panic was caught at the boundary.
  SC_STATUS_INTERNAL = 4,
} ScStatus;

typedef enum ScGroup {
  SC_GROUP_SL11 = 0,
  SC_GROUP_SU11 = 1,
  SC_GROUP_SU11_MINUS = 2,
} ScGroup;

// Opaque handle to a (1|1) supermatrix point.
typedef struct ScPoint ScPoint;

// Opaque representation handle.
typedef struct ScRepresentation ScRepresentation;

// Opaque handle to a section of the structure sheaf.
typedef struct ScSection ScSection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the message of the last failed call on this thread, or null.
// The pointer stays valid until the next call into this library.
const char *sc_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library and not yet freed.
void sc_string_free(char *s);

// Runs the self-check suite and writes the report. Returns
// `MathFailure` when a check fails; the report is written either way.
//
// # Safety
// `out_json` must be a valid pointer.
enum ScStatus sc_verify(uint64_t seed, int64_t weights, double tol, char **out_json);

// Parses a representation. `tol` is 0 for exact arithmetic.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum ScStatus sc_rep_from_json(const char *json, double tol, struct ScRepresentation **out);

// # Safety
// `rep` must be null or a handle from [`sc_rep_from_json`] not yet freed.
void sc_rep_free(struct ScRepresentation *rep);

// # Safety
// `rep` must be a live handle and `out_json` a valid pointer.
enum ScStatus sc_rep_to_json(const struct ScRepresentation *rep, char **out_json);

// Checks the defining relations; the report lists the violations.
//
// # Safety
// `rep` must be a live handle and `out_json` a valid pointer.
enum ScStatus sc_rep_validate(const struct ScRepresentation *rep, char **out_json);

// Decomposes into irreducibles and reports the change of basis.
//
// # Safety
// `rep` must be a live handle and `out_json` a valid pointer.
enum ScStatus sc_rep_decompose(const struct ScRepresentation *rep, char **out_json);

// Parses a point `{a, beta, gamma, d}` over a shared generator set.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum ScStatus sc_point_from_json(const char *json, double tol, struct ScPoint **out);

// # Safety
// `point` must be null or a live handle.
void sc_point_free(struct ScPoint *point);

// # Safety
// `point` must be a live handle and `out_json` a valid pointer.
enum ScStatus sc_point_to_json(const struct ScPoint *point, char **out_json);

// Membership in `group`. Returns `MathFailure` for non-members; the report
// names the violated relations.
//
// # Safety
// `point` must be a live handle and `out_json` a valid pointer.
enum ScStatus sc_point_check(const struct ScPoint *point, enum ScGroup group, char **out_json);

// Writes the factorization `{t, theta, eta}` of a unitary point.
//
// # Safety
// `point` must be a live handle and `out_json` a valid pointer.
enum ScStatus sc_point_factorize(const struct ScPoint *point, enum ScGroup group, char **out_json);

// Applies the real-structure involution and returns a new handle.
//
// # Safety
// `point` must be a live handle and `out` a valid pointer.
enum ScStatus sc_point_involute(const struct ScPoint *point, struct ScPoint **out);

// Parses a section `{group, terms}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum ScStatus sc_section_from_json(const char *json, double tol, struct ScSection **out);

// # Safety
// `section` must be null or a live handle.
void sc_section_free(struct ScSection *section);

// Expands a section in matrix coefficients. A nonzero residual is
// reported in the JSON and is not an error.
//
// # Safety
// `section` must be a live handle and `out_json` a valid pointer.
enum ScStatus sc_section_expand(const struct ScSection *section, char **out_json);

// Matrix coefficients of `pi_m^sign` (`sign` is `'+'` or `'-'`), of `V_m`
// when `sign` is 0, or of the adjoint when `m` is 0 and `sign` is 0.
//
// # Safety
// `out_json` must be a valid pointer.
enum ScStatus sc_pw_coeffs(int64_t m, char sign, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERCIRCLE_H */

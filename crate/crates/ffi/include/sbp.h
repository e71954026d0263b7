#ifndef SBP_H
#define SBP_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes shared by every function.
typedef enum SbpStatus {
  SBP_STATUS_OK = 0,
  // A mathematical check failed; the message names the witness.
  SBP_STATUS_CHECK_FAILED = 1,
  SBP_STATUS_INVALID_ARGUMENT = 2,
  SBP_STATUS_PARSE_ERROR = 3,
  SBP_STATUS_VALIDATION_ERROR = 4,
  SBP_STATUS_BUDGET_EXCEEDED = 5,
  SBP_STATUS_NULL_POINTER = 6,
  SBP_STATUS_PANIC = 7,
} SbpStatus;

// A validated pseudo-action.
typedef struct SbpPseudoAction SbpPseudoAction;

// A verified semi-biproduct.
typedef struct SbpSemiBiproduct SbpSemiBiproduct;

// A loaded set of monoids, maps, pseudo-actions and bundles.
typedef struct SbpWorkspace SbpWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message for the last failed call on this thread, or an empty
// string. Valid until the next call into the library on this thread.
const char *sbp_last_error(void);

// Parses one `sbp-1` document held in memory.
//
// # Safety
// `json` is a NUL-terminated string; `out` is valid for writes.
enum SbpStatus sbp_workspace_from_json(const char *json, struct SbpWorkspace **out);

// Reads one `sbp-1` file.
//
// # Safety
// `path` is a NUL-terminated string; `out` is valid for writes.
enum SbpStatus sbp_workspace_load(const char *path, struct SbpWorkspace **out);

// # Safety
// `ws` is null or a handle from this library, not yet freed.
void sbp_workspace_free(struct SbpWorkspace *ws);

// Number of semi-biproduct bundles in the workspace.
//
// # Safety
// `ws` is a live handle; `out` is valid for writes.
enum SbpStatus sbp_workspace_bundle_count(const struct SbpWorkspace *ws, size_t *out);

// Verifies the bundle `name` (or the only bundle when `name` is null).
// Returns `CheckFailed` with the witness in the message when an equation
// fails.
//
// # Safety
// `ws` is a live handle; `name` is null or NUL-terminated; `out` is valid
// for writes.
enum SbpStatus sbp_verify(const struct SbpWorkspace *ws,
                          const char *name,
                          struct SbpSemiBiproduct **out);

// # Safety
// `sb` is null or a handle from this library, not yet freed.
void sbp_semibiproduct_free(struct SbpSemiBiproduct *sb);

// Whether the correction system is trivial.
//
// # Safety
// `sb` is a live handle; `out` is valid for writes.
enum SbpStatus sbp_is_schreier(const struct SbpSemiBiproduct *sb, bool *out);

// `|A|` of the semi-biproduct.
//
// # Safety
// `sb` is a live handle; `out` is valid for writes.
enum SbpStatus sbp_semibiproduct_order(const struct SbpSemiBiproduct *sb, size_t *out);

// The bundle as an `sbp-1` document with inline monoids.
//
// # Safety
// `sb` is a live handle; `out` is valid for writes.
enum SbpStatus sbp_semibiproduct_to_json(const struct SbpSemiBiproduct *sb, char **out);

// Reads off the pseudo-action of a semi-biproduct.
//
// # Safety
// `sb` is a live handle; `out` is valid for writes.
enum SbpStatus sbp_extract(const struct SbpSemiBiproduct *sb, struct SbpPseudoAction **out);

// Validates the pseudo-action `name` (or the only one when `name` is
// null).
//
// # Safety
// `ws` is a live handle; `name` is null or NUL-terminated; `out` is valid
// for writes.
enum SbpStatus sbp_validate_action(const struct SbpWorkspace *ws,
                                   const char *name,
                                   struct SbpPseudoAction **out);

// # Safety
// `pa` is null or a handle from this library, not yet freed.
void sbp_pseudo_action_free(struct SbpPseudoAction *pa);

// The pseudo-action as an `sbp-1` document with inline monoids.
//
// # Safety
// `pa` is a live handle; `out` is valid for writes.
enum SbpStatus sbp_pseudo_action_to_json(const struct SbpPseudoAction *pa, char **out);

// Builds the synthetic semi-biproduct `X ⋊ B` of a pseudo-action.
//
// # Safety
// `pa` is a live handle; `out` is valid for writes.
enum SbpStatus sbp_synthesize(const struct SbpPseudoAction *pa, struct SbpSemiBiproduct **out);

// All pseudo-actions of `b` on `x` as JSON lines, one `sbp-1` document per
// line in table order. Monoids are looked up in `ws` (which may be null)
// and then among the builtin names. A `budget` of 0 selects the default.
//
// # Safety
// `ws` is null or a live handle; `x` and `b` are NUL-terminated; `out` is
// valid for writes.
enum SbpStatus sbp_enumerate_actions_jsonl(const struct SbpWorkspace *ws,
                                           const char *x,
                                           const char *b,
                                           uint64_t budget,
                                           char **out);

// # Safety
// `s` is null or a string returned by this library, not yet freed.
void sbp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SBP_H */

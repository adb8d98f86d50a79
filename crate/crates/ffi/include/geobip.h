#ifndef GEOBIP_H
#define GEOBIP_H

#include <stddef.h>
#include <stdint.h>

/*
 Result of every call. Codes 0 and 3 to 7 match the CLI exit statuses.
 */
typedef enum GeobipStatus {
  GEOBIP_STATUS_OK = 0,
  /*
   `geobip_verify` found the solution infeasible.
   */
  GEOBIP_STATUS_INFEASIBLE = 1,
  /*
   A required pointer argument was null.
   */
  GEOBIP_STATUS_NULL_ARGUMENT = 2,
  GEOBIP_STATUS_VALIDATION = 3,
  GEOBIP_STATUS_CAPACITY = 4,
  GEOBIP_STATUS_IO = 5,
  GEOBIP_STATUS_PARSE = 6,
  GEOBIP_STATUS_INTERNAL = 7,
  /*
   A panic was caught at the boundary.
   */
  GEOBIP_STATUS_PANIC = 8,
} GeobipStatus;

/*
 A parsed instance.
 */
typedef struct GeobipInstance GeobipInstance;

/*
 A solver result.
 */
typedef struct GeobipSolution GeobipSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next call on the same thread.
 */
const char *geobip_last_error_message(void);

/*
 Parses an instance document.

 # Safety
 `json` is a NUL-terminated string; `out` points to writable storage.
 */
enum GeobipStatus geobip_instance_from_json(const char *json, struct GeobipInstance **out);

/*
 # Safety
 `inst` is null or a handle from `geobip_instance_from_json` not yet freed.
 */
void geobip_instance_free(struct GeobipInstance *inst);

/*
 Number of objects; 0 for a null handle.

 # Safety
 `inst` is null or a live handle.
 */
uintptr_t geobip_instance_len(const struct GeobipInstance *inst);

/*
 Solves with the named algorithm (`"auto"` when `algorithm` is null).

 # Safety
 `inst` is a live handle, `algorithm` is null or NUL-terminated, `out`
 points to writable storage.
 */
enum GeobipStatus geobip_solve(const struct GeobipInstance *inst,
                               const char *algorithm,
                               struct GeobipSolution **out);

/*
 # Safety
 `sol` is null or a handle from `geobip_solve` not yet freed.
 */
void geobip_solution_free(struct GeobipSolution *sol);

/*
 Number of selected objects; 0 for a null handle.

 # Safety
 `sol` is null or a live handle.
 */
uintptr_t geobip_solution_len(const struct GeobipSolution *sol);

/*
 Selected indices in increasing order, `geobip_solution_len` entries.
 Owned by the handle.

 # Safety
 `sol` is null or a live handle.
 */
const uintptr_t *geobip_solution_indices(const struct GeobipSolution *sol);

/*
 Side (0 or 1) of each selected index, parallel to the indices; null when
 the solution carries no coloring. Owned by the handle.

 # Safety
 `sol` is null or a live handle.
 */
const uint8_t *geobip_solution_colors(const struct GeobipSolution *sol);

/*
 Serializes the solution document; release with `geobip_string_free`.

 # Safety
 `sol` is a live handle; `out` points to writable storage.
 */
enum GeobipStatus geobip_solution_to_json(const struct GeobipSolution *sol, char **out);

/*
 Checks a solution document against an instance. Returns `Ok` when
 feasible and `Infeasible` otherwise. When `report` is non-null it
 receives a line such as `feasible size=3` or `infeasible witness=...`,
 released with `geobip_string_free`.

 # Safety
 `inst` is a live handle, `solution_json` is NUL-terminated, `report` is
 null or points to writable storage.
 */
enum GeobipStatus geobip_verify(const struct GeobipInstance *inst,
                                const char *solution_json,
                                char **report);

/*
 Releases a string returned by this library.

 # Safety
 `s` is null or a string from this library not yet freed.
 */
void geobip_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GEOBIP_H */

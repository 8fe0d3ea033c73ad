#ifndef SYSLAB_H
#define SYSLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values 1 to 24 match the library's error kinds.
 */
typedef enum SyslabStatus {
  SYSLAB_STATUS_OK = 0,
  SYSLAB_STATUS_UNREACHABLE = 1,
  SYSLAB_STATUS_BOUNDARY_UNSAFE = 2,
  SYSLAB_STATUS_NOT_A_SIMPLEX = 3,
  SYSLAB_STATUS_EMPTY_LAYER = 4,
  SYSLAB_STATUS_CONSTRUCTION_FAILED = 5,
  SYSLAB_STATUS_CONDITION_VIOLATED = 6,
  SYSLAB_STATUS_MALFORMED_PROFILE = 7,
  SYSLAB_STATUS_NO_REALIZING_CHAIN = 8,
  SYSLAB_STATUS_PRECONDITION_VIOLATED = 9,
  SYSLAB_STATUS_NOT_FLAT = 10,
  SYSLAB_STATUS_TIMEOUT = 11,
  SYSLAB_STATUS_NO_FILLING = 12,
  SYSLAB_STATUS_NOT_A_SIMPLEX_OF_DISK = 13,
  SYSLAB_STATUS_DEGENERATE_DOMAIN = 14,
  SYSLAB_STATUS_OUTSIDE_DOMAIN = 15,
  SYSLAB_STATUS_NO_CROSSING = 16,
  SYSLAB_STATUS_NO_SELECTION = 17,
  SYSLAB_STATUS_INCONCLUSIVE = 18,
  SYSLAB_STATUS_NOT_TRANSLATION_LIKE = 19,
  SYSLAB_STATUS_NO_STABLE_SEGMENT = 20,
  SYSLAB_STATUS_NOT_PLANE_BACKED = 21,
  SYSLAB_STATUS_PARSE = 22,
  SYSLAB_STATUS_IO = 23,
  SYSLAB_STATUS_TASK_FAILED = 24,
  /**
   * A required pointer argument was null.
   */
  SYSLAB_STATUS_NULL_ARGUMENT = 100,
  /**
   * A vertex id is out of range for the complex.
   */
  SYSLAB_STATUS_BAD_VERTEX = 101,
  /**
   * The caller's buffer is too small; the needed length was written.
   */
  SYSLAB_STATUS_BUFFER_TOO_SMALL = 102,
  SYSLAB_STATUS_INVALID_UTF8 = 103,
  /**
   * The library panicked; this is a bug.
   */
  SYSLAB_STATUS_INTERNAL = 104,
} SyslabStatus;

/**
 * A flag complex.
 */
typedef struct SyslabComplex SyslabComplex;

/**
 * The outcome of a scenario run.
 */
typedef struct SyslabReport SyslabReport;

/**
 * A sequence of simplices, as produced by the geodesic constructions.
 */
typedef struct SyslabSimplices SyslabSimplices;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *syslab_last_error(void);

/**
 * Library version as a static string.
 */
const char *syslab_version(void);

/**
 * Parses a complex in the `flagcomplex v1` text format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum SyslabStatus syslab_complex_parse(const char *text, struct SyslabComplex **out);

/**
 * Reads and parses a complex file.
 *
 * # Safety
 * `path` must be a nul-terminated string and `out` a valid pointer.
 */
enum SyslabStatus syslab_complex_load(const char *path, struct SyslabComplex **out);

/**
 * The hexagonal window of the triangular lattice around axial `(a, b)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SyslabStatus syslab_complex_window(int64_t a,
                                        int64_t b,
                                        uint32_t radius,
                                        struct SyslabComplex **out);

/**
 * # Safety
 * `c` must come from this library and not be used afterwards. Null is ignored.
 */
void syslab_complex_free(struct SyslabComplex *c);

/**
 * Number of vertices, or 0 for null.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t syslab_complex_vertex_count(const struct SyslabComplex *c);

/**
 * The vertex at axial `(a, b)` of a plane-backed complex.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum SyslabStatus syslab_complex_vertex_at(const struct SyslabComplex *c,
                                           int64_t a,
                                           int64_t b,
                                           uint32_t *out);

/**
 * Axial coordinates of a vertex of a plane-backed complex.
 *
 * # Safety
 * `c` must be a live handle; `a` and `b` valid pointers.
 */
enum SyslabStatus syslab_complex_coord(const struct SyslabComplex *c,
                                       uint32_t v,
                                       int64_t *a,
                                       int64_t *b);

/**
 * Combinatorial distance, searching at most `budget` steps.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum SyslabStatus syslab_distance(const struct SyslabComplex *c,
                                  uint32_t x,
                                  uint32_t y,
                                  uint32_t budget,
                                  uint32_t *out);

/**
 * Checks that every vertex link is 6-large. On failure `witness` receives
 * the vertex followed by the short induced cycle of its link, and `len` its
 * length; `witness` may be null when `cap` is 0.
 *
 * # Safety
 * `c` must be a live handle; `passed` and `len` valid pointers; `witness`
 * valid for `cap` entries.
 */
enum SyslabStatus syslab_check_local_6_large(const struct SyslabComplex *c,
                                             bool *passed,
                                             uint32_t *witness,
                                             size_t cap,
                                             size_t *len);

/**
 * The directed geodesic from `x` to `y`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum SyslabStatus syslab_directed_geodesic(const struct SyslabComplex *c,
                                           uint32_t x,
                                           uint32_t y,
                                           struct SyslabSimplices **out);

/**
 * The Euclidean geodesic between `x` and `y`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum SyslabStatus syslab_euclidean_geodesic(const struct SyslabComplex *c,
                                            uint32_t x,
                                            uint32_t y,
                                            struct SyslabSimplices **out);

/**
 * Number of simplices in the sequence, or 0 for null.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t syslab_simplices_len(const struct SyslabSimplices *s);

/**
 * Copies the vertices of simplex `i` into `buf`.
 *
 * # Safety
 * `s` must be a live handle, `len` a valid pointer and `buf` valid for
 * `cap` entries.
 */
enum SyslabStatus syslab_simplices_get(const struct SyslabSimplices *s,
                                       size_t i,
                                       uint32_t *buf,
                                       size_t cap,
                                       size_t *len);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void syslab_simplices_free(struct SyslabSimplices *s);

/**
 * The vertex geodesic selected from the Euclidean geodesic between `x` and `y`.
 *
 * # Safety
 * `c` must be a live handle, `len` a valid pointer and `buf` valid for
 * `cap` entries.
 */
enum SyslabStatus syslab_vertex_geodesic(const struct SyslabComplex *c,
                                         uint32_t x,
                                         uint32_t y,
                                         uint32_t *buf,
                                         size_t cap,
                                         size_t *len);

/**
 * The smallest constant for which the vertex path is good.
 *
 * # Safety
 * `c` must be a live handle, `path` valid for `n` entries and `out` a valid pointer.
 */
enum SyslabStatus syslab_goodness(const struct SyslabComplex *c,
                                  const uint32_t *path,
                                  size_t n,
                                  uint32_t *out);

/**
 * Runs a scenario file. `constants` may be null or an override list such
 * as `"C=300,D=900"`; `out_dir` may be null to use the scenario's own output
 * path. Input errors are returned as a status; failed assertions still
 * produce a report.
 *
 * # Safety
 * String arguments must be null or nul-terminated; `out` a valid pointer.
 */
enum SyslabStatus syslab_run_scenario(const char *path,
                                      const char *constants,
                                      const char *out_dir,
                                      struct SyslabReport **out);

/**
 * The report as JSON, valid while the handle lives.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
const char *syslab_report_json(const struct SyslabReport *r);

/**
 * Whether every assertion of every task passed.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
bool syslab_report_passed(const struct SyslabReport *r);

/**
 * The process exit code the CLI would use for this run.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
int32_t syslab_report_exit_code(const struct SyslabReport *r);

/**
 * # Safety
 * `r` must come from this library and not be used afterwards. Null is ignored.
 */
void syslab_report_free(struct SyslabReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYSLAB_H */

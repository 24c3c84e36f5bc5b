/* C interface for the metallic cube library. */

#ifndef METALLIC_H
#define METALLIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Export formats accepted by [`metallic_cube_export`].
 */
typedef enum MetallicFormat {
  METALLIC_FORMAT_DOT = 0,
  METALLIC_FORMAT_JSON = 1,
  METALLIC_FORMAT_EDGE_LIST = 2,
} MetallicFormat;

/**
 * Status code of every fallible ABI call.
 */
typedef enum MetallicStatus {
  METALLIC_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  METALLIC_STATUS_NULL_POINTER = 1,
  /**
   * Parameters violate a precondition (bad letters, bad rank, bad text).
   */
  METALLIC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The requested object exceeds the vertex or all-pairs cap.
   */
  METALLIC_STATUS_CAP_EXCEEDED = 3,
  /**
   * The operation is not defined for these parameters (e.g. cycles for
   * odd alphabets).
   */
  METALLIC_STATUS_UNSUPPORTED = 4,
  /**
   * A constructor failed its own revalidation.
   */
  METALLIC_STATUS_CONSTRUCTION_FAILED = 5,
} MetallicStatus;

/**
 * Opaque handle to an immutable graph.
 */
typedef struct MetallicCubeHandle MetallicCubeHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds `Π^a_n` under `vertex_cap` (pass 0 for the library default) and
 * stores an owned handle in `out`. Free it with [`metallic_cube_free`].
 *
 * # Safety
 * `out` must be NULL or point to writable handle-pointer storage.
 */
enum MetallicStatus metallic_cube_build(uint32_t a,
                                        size_t n,
                                        uint64_t vertex_cap,
                                        struct MetallicCubeHandle **out);

/**
 * Releases a handle from [`metallic_cube_build`]. NULL is a no-op.
 *
 * # Safety
 * `cube` must be a pointer returned by [`metallic_cube_build`] that has not
 * been freed yet.
 */
void metallic_cube_free(struct MetallicCubeHandle *cube);

/**
 * Number of vertices, or 0 for a NULL handle.
 *
 * # Safety
 * `cube` must be NULL or a live handle from [`metallic_cube_build`].
 */
size_t metallic_cube_vertex_count(const struct MetallicCubeHandle *cube);

/**
 * Number of edges, or 0 for a NULL handle.
 *
 * # Safety
 * `cube` must be NULL or a live handle from [`metallic_cube_build`].
 */
uint64_t metallic_cube_edge_count(const struct MetallicCubeHandle *cube);

/**
 * Degree of the vertex with the given rank.
 *
 * # Safety
 * `cube` must be NULL or a live handle; `out` NULL or writable.
 */
enum MetallicStatus metallic_cube_degree(const struct MetallicCubeHandle *cube,
                                         size_t rank,
                                         size_t *out);

/**
 * Borrows the sorted neighbor ranks of a vertex. The view lives as long as
 * the cube handle.
 *
 * # Safety
 * `cube` must be NULL or a live handle; the out-pointers NULL or writable.
 */
enum MetallicStatus metallic_cube_neighbors(const struct MetallicCubeHandle *cube,
                                            size_t rank,
                                            const uint32_t **out_ptr,
                                            size_t *out_len);

/**
 * Textual form of a vertex (digits for a <= 9, dot-separated letters above,
 * `-` for the empty word). Free with [`metallic_string_free`].
 *
 * # Safety
 * `cube` must be NULL or a live handle; `out` NULL or writable.
 */
enum MetallicStatus metallic_cube_vertex_text(const struct MetallicCubeHandle *cube,
                                              size_t rank,
                                              char **out);

/**
 * Rank of the vertex spelled by `text` (same textual form as
 * [`metallic_cube_vertex_text`]).
 *
 * # Safety
 * `text` must point to a NUL-terminated string.
 */
enum MetallicStatus metallic_cube_rank_of(const struct MetallicCubeHandle *cube,
                                          const char *text,
                                          size_t *out);

/**
 * BFS distances from `source` into `out`, which must hold
 * `metallic_cube_vertex_count` entries.
 *
 * # Safety
 * `out` must point to writable memory for at least `vertex_count` u32s.
 */
enum MetallicStatus metallic_cube_bfs_distances(const struct MetallicCubeHandle *cube,
                                                size_t source,
                                                uint32_t *out);

/**
 * Serializes the graph (dot, json or edge list). Free the string with
 * [`metallic_string_free`].
 *
 * # Safety
 * `cube` must be NULL or a live handle; `out` NULL or writable.
 */
enum MetallicStatus metallic_cube_export(const struct MetallicCubeHandle *cube,
                                         enum MetallicFormat format,
                                         char **out);

/**
 * Vertex count `s^a_n` as a decimal string (exact for any size). Free with
 * [`metallic_string_free`].
 *
 * # Safety
 * `out` must be NULL or point to writable string-pointer storage.
 */
enum MetallicStatus metallic_vertex_count_decimal(uint32_t a, size_t n, char **out);

/**
 * Edge count `e^a_n` as a decimal string. Free with
 * [`metallic_string_free`].
 *
 * # Safety
 * `out` must be NULL or point to writable string-pointer storage.
 */
enum MetallicStatus metallic_edge_count_decimal(uint32_t a, size_t n, char **out);

/**
 * Closed-form radius of `Π^a_n` (requires `a, n >= 1`).
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum MetallicStatus metallic_radius(uint32_t a, size_t n, uint64_t *out);

/**
 * Closed-form diameter `an − 1` of `Π^a_n` (requires `a, n >= 1`).
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum MetallicStatus metallic_diameter(uint32_t a, size_t n, uint64_t *out);

/**
 * Constructs a Hamiltonian path and hands out its vertex ranks in visiting
 * order. Free the buffer with [`metallic_ranks_free`].
 *
 * # Safety
 * `cube` must be NULL or a live handle; the out-pointers NULL or writable.
 */
enum MetallicStatus metallic_hamiltonian_path(const struct MetallicCubeHandle *cube,
                                              uint32_t **out_ranks,
                                              size_t *out_len);

/**
 * Releases a rank buffer from [`metallic_hamiltonian_path`].
 *
 * # Safety
 * `ranks` and `len` must come from a single successful
 * [`metallic_hamiltonian_path`] call, not yet freed.
 */
void metallic_ranks_free(uint32_t *ranks, size_t len);

/**
 * Releases a string allocated by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must be a string returned by this library, not yet freed.
 */
void metallic_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* METALLIC_H */

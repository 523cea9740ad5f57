#ifndef RGCX_H
#define RGCX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Families exposed over the C ABI; values mirror the CLI names.
 */
typedef enum RgcxFamily {
  /**
   * undirected surface complex
   */
  RgcxFamily_Rgc = 0,
  /**
   * directed (quiver) surface complex
   */
  RgcxFamily_Orgc = 1,
  /**
   * undirected one-boundary complex
   */
  RgcxFamily_Rgc1 = 2,
  /**
   * directed one-boundary complex
   */
  RgcxFamily_Orgc1 = 3,
  /**
   * two-colored recoloring complex
   */
  RgcxFamily_Mixed = 4,
  /**
   * haired properad generators
   */
  RgcxFamily_Pcy = 5,
} RgcxFamily;

/**
 * Status codes returned by every API entry point.
 */
typedef enum RgcxStatus {
  /**
   * success
   */
  RgcxStatus_Ok = 0,
  /**
   * a pointer argument was null
   */
  RgcxStatus_NullArgument = 1,
  /**
   * family / degree-shift / sector combination is invalid
   */
  RgcxStatus_InvalidConfig = 2,
  /**
   * an index was out of range for the handle it addresses
   */
  RgcxStatus_OutOfRange = 3,
  /**
   * the exact rank and the modular cross-check disagreed
   */
  RgcxStatus_RankCheckFailed = 4,
  /**
   * an internal invariant failed
   */
  RgcxStatus_Internal = 5,
} RgcxStatus;

/**
 * Opaque: the canonical basis of one cohomological degree.
 */
typedef struct RgcxBasis RgcxBasis;

/**
 * Opaque: a validated (family, degree shift, sector) triple.
 */
typedef struct RgcxSpec RgcxSpec;

/**
 * Per-degree exact rank data.
 */
typedef struct RgcxDegreeRank {
  int64_t degree;
  uintptr_t dim;
  /**
   * rank of the differential arriving from degree - 1
   */
  uintptr_t rank_in;
  /**
   * rank of the differential leaving towards degree + 1
   */
  uintptr_t rank_out;
  uintptr_t betti;
} RgcxDegreeRank;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a spec handle. `a`/`b` are (g, m) for the surface families,
 * (g, ignored) for the one-boundary families, and (p, q) for the
 * haired family. On success `*out` owns the handle.
 */
enum RgcxStatus rgcx_spec_new(enum RgcxFamily family,
                              int64_t d,
                              uint32_t a,
                              uint32_t b,
                              struct RgcxSpec **out);

/**
 * Releases a spec handle. Null is a no-op.
 */
void rgcx_spec_free(struct RgcxSpec *spec);

/**
 * Enumerates the canonical basis of one degree, scanning size classes
 * with at most `max_edges` edges. On success `*out` owns the handle.
 */
enum RgcxStatus rgcx_basis_new(const struct RgcxSpec *spec,
                               int64_t degree,
                               uintptr_t max_edges,
                               struct RgcxBasis **out);

/**
 * Releases a basis handle. Null is a no-op.
 */
void rgcx_basis_free(struct RgcxBasis *b);

/**
 * Number of basis classes.
 */
enum RgcxStatus rgcx_basis_dim(const struct RgcxBasis *b, uintptr_t *out);

/**
 * Canonical key of the `i`-th basis class as an owned C string.
 */
enum RgcxStatus rgcx_basis_key(const struct RgcxBasis *b, uintptr_t i, char **out);

/**
 * Exact rank of the differential from `from` to `to`, cross-checked
 * against an independent modular elimination.
 */
enum RgcxStatus rgcx_differential_rank(const struct RgcxSpec *spec,
                                       const struct RgcxBasis *from,
                                       const struct RgcxBasis *to,
                                       uint64_t prime,
                                       uintptr_t *out);

/**
 * The differential from `from` to `to` in Matrix Market coordinate
 * format (rational extension) as an owned C string.
 */
enum RgcxStatus rgcx_differential_matrix_market(const struct RgcxSpec *spec,
                                                const struct RgcxBasis *from,
                                                const struct RgcxBasis *to,
                                                char **out);

/**
 * Exact Betti numbers for degrees `lo ..= hi`. `ranks` must point to
 * at least `hi - lo + 1` entries; `max_edges` must be large enough
 * that every basis between `lo - 1` and `hi + 1` is complete.
 */
enum RgcxStatus rgcx_cohomology(const struct RgcxSpec *spec,
                                int64_t lo,
                                int64_t hi,
                                uintptr_t max_edges,
                                uint64_t prime,
                                struct RgcxDegreeRank *ranks);

/**
 * Canonicalizes a key produced by this library (or an equivalent
 * serialization) and returns the canonical key of the same class.
 * Useful for deduplicating externally produced graphs.
 */
enum RgcxStatus rgcx_canonical_key(const char *key, char **out);

/**
 * Frees a string returned by this library. Null is a no-op.
 */
void rgcx_string_free(char *s);

/**
 * Library version as a static string (do not free).
 */
const char *rgcx_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RGCX_H */

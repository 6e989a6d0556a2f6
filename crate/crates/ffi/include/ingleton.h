#ifndef INGLETON_H
#define INGLETON_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum IgStatus {
  IG_STATUS_OK = 0,
  IG_STATUS_NULL_POINTER = 1,
  IG_STATUS_INVALID_ARGUMENT = 2,
  IG_STATUS_PARSE_ERROR = 3,
  IG_STATUS_LIMIT_EXCEEDED = 4,
  /**
   * The group lacks a property the call needs (nilpotent, odd p-group...).
   */
  IG_STATUS_NOT_APPLICABLE = 5,
  /**
   * A construction ran but its certificate or comparison failed.
   */
  IG_STATUS_CERTIFICATE_FAILED = 6,
  IG_STATUS_PANIC = 7,
} IgStatus;

/**
 * A finite group as a multiplication table.
 */
typedef struct IgGroup IgGroup;

/**
 * The subgroups of a group with their ids.
 */
typedef struct IgLattice IgLattice;

/**
 * Outcome of a full Ingleton scan.
 */
typedef struct IgScan IgScan;

/**
 * Both sides of the Ingleton inequality for one quadruple, as the orders
 * whose products form each side.
 */
typedef struct IgIngleton {
  /**
   * `|G1|, |G2|, |G34|, |G123|, |G124|`.
   */
  uint64_t lhs_orders[5];
  /**
   * `|G12|, |G13|, |G14|, |G23|, |G24|`.
   */
  uint64_t rhs_orders[5];
  bool satisfied;
  /**
   * `lhs / rhs`, rounded.
   */
  double slack;
} IgIngleton;

typedef struct IgScanOptions {
  /**
   * `0` picks the available parallelism.
   */
  size_t threads;
  /**
   * Skip quadruples with a repeated id.
   */
  bool distinct;
  /**
   * Violating quadruples kept in the result; all are still counted.
   */
  size_t max_violations;
} IgScanOptions;

typedef struct IgLazardReport {
  bool certificate_passed;
  size_t class_;
  /**
   * Sorted quadruples whose entropy vectors matched.
   */
  uint64_t quadruples_checked;
} IgLazardReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *ig_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ig_version(void);

/**
 * Builds a group from a spec line such as `heisenberg p=3`.
 * `order_cap == 0` uses the default cap.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum IgStatus ig_group_from_spec(const char *spec, size_t order_cap, struct IgGroup **out);

/**
 * # Safety
 * `g` must come from [`ig_group_from_spec`] and not be used afterwards.
 */
void ig_group_free(struct IgGroup *g);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_group_order(const struct IgGroup *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_group_identity(const struct IgGroup *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_group_mul(const struct IgGroup *g, size_t x, size_t y, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_group_inverse(const struct IgGroup *g, size_t x, size_t *out);

/**
 * `[x, y] = x⁻¹ y⁻¹ x y`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_group_commutator(const struct IgGroup *g, size_t x, size_t y, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_group_element_order(const struct IgGroup *g, size_t x, uint64_t *out);

/**
 * Nilpotency class; `NotApplicable` when the group is not nilpotent.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_group_class(const struct IgGroup *g, size_t *out);

/**
 * Enumerates every subgroup. `subgroup_cap == 0` uses the default cap.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_lattice_new(const struct IgGroup *g, size_t subgroup_cap, struct IgLattice **out);

/**
 * # Safety
 * `l` must come from [`ig_lattice_new`] and not be used afterwards.
 */
void ig_lattice_free(struct IgLattice *l);

/**
 * Number of subgroups. Ids run from `0` (trivial) to `len - 1` (whole group).
 *
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum IgStatus ig_lattice_len(const struct IgLattice *l, size_t *out);

/**
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum IgStatus ig_lattice_subgroup_order(const struct IgLattice *l, size_t id, size_t *out);

/**
 * Id of `a ∩ b`.
 *
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum IgStatus ig_lattice_intersect(const struct IgLattice *l, size_t a, size_t b, size_t *out);

/**
 * Writes `|G : G_S|` for every nonempty subset mask `S` of the `n` ids into
 * `out[S - 1]`. Bit `i` of a mask selects `ids[i]`; `out_len` must be at
 * least `2^n - 1`.
 *
 * # Safety
 * `l` must be a live handle, `ids` must hold `n` values and `out` must hold
 * `out_len` values.
 */
enum IgStatus ig_entropy_vector(const struct IgLattice *l,
                                const size_t *ids,
                                size_t n,
                                uint64_t *out,
                                size_t out_len);

/**
 * # Safety
 * `l` must be a live handle, `ids` must hold four values and `out` be writable.
 */
enum IgStatus ig_ingleton_check(const struct IgLattice *l,
                                const size_t *ids,
                                struct IgIngleton *out);

/**
 * Options matching the command-line defaults.
 */
struct IgScanOptions ig_scan_options_default(void);

/**
 * Checks every canonical quadruple of the lattice. `options` may be null.
 *
 * # Safety
 * `l` must be a live handle, `options` null or readable, `out` writable.
 */
enum IgStatus ig_scan_new(const struct IgLattice *l,
                          const struct IgScanOptions *options,
                          struct IgScan **out);

/**
 * # Safety
 * `s` must come from [`ig_scan_new`] and not be used afterwards.
 */
void ig_scan_free(struct IgScan *s);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum IgStatus ig_scan_checked(const struct IgScan *s, uint64_t *out);

/**
 * Total number of violating canonical quadruples.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum IgStatus ig_scan_violation_count(const struct IgScan *s, uint64_t *out);

/**
 * Number of violations kept, at most `max_violations`.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum IgStatus ig_scan_kept(const struct IgScan *s, size_t *out);

/**
 * The `i`-th kept violation, in scan order.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum IgStatus ig_scan_violation(const struct IgScan *s,
                                size_t i,
                                struct IgIngleton *out,
                                size_t *ids);

/**
 * Smallest `lhs / rhs` seen, rounded. `NotApplicable` for an empty scan.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum IgStatus ig_scan_min_slack(const struct IgScan *s, double *out);

/**
 * Builds the abelian counterpart of an odd p-group of class below `p`, or of
 * a nilpotent group through its Sylow parts, and compares the entropy
 * vectors of every sorted subgroup quadruple.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IgStatus ig_lazard_verify(const struct IgGroup *g, struct IgLazardReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INGLETON_H */

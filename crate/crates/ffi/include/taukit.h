/* C bindings for the taukit library. */

#ifndef TAUKIT_H
#define TAUKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Verdict of a Z_p root search.
typedef enum TaukitRootVerdict {
  TaukitRootVerdict_CertifiedNo = 0,
  TaukitRootVerdict_CertifiedYes = 1,
  TaukitRootVerdict_Inconclusive = 2,
} TaukitRootVerdict;

// Status code of every fallible call.
typedef enum TaukitStatus {
  TaukitStatus_Ok = 0,
  TaukitStatus_NullPointer = 1,
  TaukitStatus_InvalidArgument = 2,
  TaukitStatus_BufferTooSmall = 3,
  TaukitStatus_ComputeFailed = 4,
} TaukitStatus;

// Opaque curve handle.
typedef struct TaukitCurve TaukitCurve;

// Opaque τ table handle.
typedef struct TaukitTauTable TaukitTauTable;

// Aggregate outcome of a verification sweep.
typedef struct TaukitSweepSummary {
  uint64_t checked;
  uint64_t failures;
} TaukitSweepSummary;

// Reduction of a curve at one prime.  `a_p` is meaningful only when
// `has_a_p` is true (good reduction).
typedef struct TaukitReduction {
  uint64_t p;
  bool good;
  uint64_t affine_count;
  bool has_a_p;
  int64_t a_p;
} TaukitReduction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *taukit_version(void);

// Compute the τ table for 1 <= n <= max_n.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum TaukitStatus taukit_tau_table_compute(uint64_t max_n, struct TaukitTauTable **out);

// Load a table from the plain text format.
//
// # Safety
// `path` must be a NUL-terminated string, `out` a valid handle slot.
enum TaukitStatus taukit_tau_table_load(const char *path, struct TaukitTauTable **out);

// Save a table in the plain text format.
//
// # Safety
// `table` must be a live handle, `path` a NUL-terminated string.
enum TaukitStatus taukit_tau_table_save(const struct TaukitTauTable *table, const char *path);

// Release a table handle; a null pointer is a no-op.
//
// # Safety
// `table` must have come from a taukit constructor and not be freed twice.
void taukit_tau_table_free(struct TaukitTauTable *table);

// Largest n covered by the table, or 0 for a null handle.
//
// # Safety
// `table` must be a live handle or null.
uint64_t taukit_tau_table_max_n(const struct TaukitTauTable *table);

// τ(n) as a NUL-terminated decimal string.
//
// # Safety
// `table` must be a live handle; `buf` must have `cap` writable bytes.
enum TaukitStatus taukit_tau_decimal(const struct TaukitTauTable *table,
                                     uint64_t n,
                                     char *buf,
                                     size_t cap,
                                     size_t *len_out);

// τ(n) extended multiplicatively from the table's prime coverage, as a
// decimal string; n may exceed the table.
//
// # Safety
// As for [`taukit_tau_decimal`].
enum TaukitStatus taukit_tau_extended_decimal(const struct TaukitTauTable *table,
                                              uint64_t n,
                                              char *buf,
                                              size_t cap,
                                              size_t *len_out);

// Sweep both laws of the multiplicativity conjecture.
//
// # Safety
// `table` must be a live handle, `summary` a valid pointer.
enum TaukitStatus taukit_verify_conjecture_one(const struct TaukitTauTable *table,
                                               struct TaukitSweepSummary *summary);

// Sweep τ(p)² < 4p¹¹ over every prime in the table.
//
// # Safety
// As for [`taukit_verify_conjecture_one`].
enum TaukitStatus taukit_verify_deligne(const struct TaukitTauTable *table,
                                        struct TaukitSweepSummary *summary);

// Sweep the eigenform identity for primes p <= p_max.
//
// # Safety
// As for [`taukit_verify_conjecture_one`].
enum TaukitStatus taukit_verify_eigenform(const struct TaukitTauTable *table,
                                          uint64_t p_max,
                                          struct TaukitSweepSummary *summary);

// Sweep one of the classical congruence laws: 0 = mod 691, 1 = mod 2⁵,
// 2 = mod 3.
//
// # Safety
// As for [`taukit_verify_conjecture_one`].
enum TaukitStatus taukit_verify_congruence(const struct TaukitTauTable *table,
                                           int law,
                                           struct TaukitSweepSummary *summary);

// Create a curve y² = x³ + ax + b; rejects zero discriminant.
//
// # Safety
// `out` must be a valid handle slot.
enum TaukitStatus taukit_curve_new(int64_t a, int64_t b, struct TaukitCurve **out);

// Release a curve handle; a null pointer is a no-op.
//
// # Safety
// `curve` must have come from [`taukit_curve_new`] and not be freed twice.
void taukit_curve_free(struct TaukitCurve *curve);

// Reduce a curve at one prime: good/bad, affine count, and a_p when good.
//
// # Safety
// `curve` must be a live handle, `out` a valid pointer.
enum TaukitStatus taukit_curve_reduce(const struct TaukitCurve *curve,
                                      uint64_t p,
                                      struct TaukitReduction *out);

// v_p(numer/denom) into `v_out`.
//
// # Safety
// `v_out` must be a valid pointer.
enum TaukitStatus taukit_vp(uint64_t p, int64_t numer, int64_t denom, int64_t *v_out);

// Hensel-lift the simple root `start` of f mod p to precision k; the
// witness residue is written as a decimal string.
//
// # Safety
// `coeffs` must point to `coeffs_len` i64 values (constant term first);
// `buf` must have `cap` writable bytes.
enum TaukitStatus taukit_hensel_lift(const int64_t *coeffs,
                                     size_t coeffs_len,
                                     uint64_t p,
                                     uint64_t start,
                                     uint32_t k,
                                     char *buf,
                                     size_t cap,
                                     size_t *len_out);

// Decide whether f has a root in Z_p within the effort bound; on
// certified-yes the witness is written as a decimal string.
//
// # Safety
// As for [`taukit_hensel_lift`]; `verdict_out` must be a valid pointer.
enum TaukitStatus taukit_has_root_in_zp(const int64_t *coeffs,
                                        size_t coeffs_len,
                                        uint64_t p,
                                        uint32_t effort,
                                        enum TaukitRootVerdict *verdict_out,
                                        char *buf,
                                        size_t cap,
                                        size_t *len_out);

// Decide whether numer/denom is a square in Q_p at the given witness
// precision; on success the unit-part square root is written as a decimal
// string when the value is a square.
//
// # Safety
// `is_square_out` must be a valid pointer; `buf` must have `cap` writable
// bytes.
enum TaukitStatus taukit_is_square_in_qp(int64_t numer,
                                         int64_t denom,
                                         uint64_t p,
                                         uint32_t precision,
                                         bool *is_square_out,
                                         char *buf,
                                         size_t cap,
                                         size_t *len_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAUKIT_H */

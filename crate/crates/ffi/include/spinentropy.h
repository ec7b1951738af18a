/* C interface to the spinentropy library; see README for usage. */

#ifndef SPINENTROPY_H
#define SPINENTROPY_H

/* Generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Binned-distribution construction method.
typedef enum SpinBinMethod {
  SPIN_BIN_METHOD_EXACT = 0,
  SPIN_BIN_METHOD_GAUSSIAN = 1,
} SpinBinMethod;

// Measurement direction selector.
typedef enum SpinDirection {
  SPIN_DIRECTION_X = 0,
  SPIN_DIRECTION_Z = 1,
} SpinDirection;

// Call outcome; zero is success, everything else leaves outputs untouched.
typedef enum SpinStatus {
  SPIN_STATUS_OK = 0,
  SPIN_STATUS_NULL_POINTER = 1,
  SPIN_STATUS_INVALID_ARGUMENT = 2,
  SPIN_STATUS_NUMERICAL_ERROR = 3,
  SPIN_STATUS_SIZE_CAP_EXCEEDED = 4,
} SpinStatus;

// Opaque handle to a prepared N-spin product state.
typedef struct SpinState SpinState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Allocates a state handle for `n_spins` spins with z-weight `p` and
// relative phase `phi` (radians).  On success writes the handle to `out`.
//
// # Safety
// `out` must be a valid pointer to a `*mut SpinState` slot.
enum SpinStatus spinentropy_state_new(uint64_t n_spins,
                                      double p,
                                      double phi,
                                      struct SpinState **out);

// Releases a handle created by [`spinentropy_state_new`].  Null is a no-op.
//
// # Safety
// `state` must be a live handle from this library, passed at most once.
void spinentropy_state_free(struct SpinState *state);

// Probability of projecting one factor onto the +x outcome.
//
// # Safety
// `state` must be a live handle; `out` a valid f64 slot.
enum SpinStatus spinentropy_x_projection_prob(const struct SpinState *state, double *out);

// Entropy in bits of measuring every spin along `direction`.
//
// # Safety
// `state` must be a live handle; `out` a valid f64 slot.
enum SpinStatus spinentropy_product_entropy(const struct SpinState *state,
                                            enum SpinDirection direction,
                                            double *out);

// Sum of the x and z product-measurement entropies in bits.
//
// # Safety
// `state` must be a live handle; `out` a valid f64 slot.
enum SpinStatus spinentropy_eur_sum_product(const struct SpinState *state, double *out);

// Entropy floor in bits for the product-measurement pair: N.
//
// # Safety
// `out` must be a valid f64 slot.
enum SpinStatus spinentropy_eur_product_bound(uint64_t n_spins, double *out);

// Entropy in bits of the collective magnetization readout.
//
// # Safety
// `state` must be a live handle; `out` a valid f64 slot.
enum SpinStatus spinentropy_collective_entropy(const struct SpinState *state,
                                               enum SpinDirection direction,
                                               double *out);

// Gaussian-limit collective entropy in bits for a weight-`weight` readout
// on `n_spins` spins.  Rejects weight 0 and 1.
//
// # Safety
// `out` must be a valid f64 slot.
enum SpinStatus spinentropy_collective_entropy_asymptotic(uint64_t n_spins,
                                                          double weight,
                                                          double *out);

// Entropy in bits of the binned magnetization readout.
//
// # Safety
// `state` must be a live handle; `out` a valid f64 slot.
enum SpinStatus spinentropy_binned_entropy(const struct SpinState *state,
                                           uint64_t n_bins,
                                           enum SpinDirection direction,
                                           enum SpinBinMethod method,
                                           double *out);

// Binned x entropy plus binned z entropy in bits (exact method).
//
// # Safety
// `state` must be a live handle; `out` a valid f64 slot.
enum SpinStatus spinentropy_binned_entropy_sum(const struct SpinState *state,
                                               uint64_t n_bins,
                                               double *out);

// 1-based bin that a weight-`weight` binomial mean concentrates into.
//
// # Safety
// `out` must be a valid u64 slot.
enum SpinStatus spinentropy_concentration_bin(double weight, uint64_t n_bins, uint64_t *out);

// Variance-product uncertainty pair: `out_lhs` receives dX dZ and
// `out_rhs` the commutator bound; lhs >= rhs always holds.
//
// # Safety
// `state` must be a live handle; both outputs valid f64 slots.
enum SpinStatus spinentropy_robertson_pair(const struct SpinState *state,
                                           double *out_lhs,
                                           double *out_rhs);

// Fills `buffer` (length `n_bins`) with the binned magnetization pmf,
// ordered by 1-based bin number.
//
// # Safety
// `state` must be a live handle; `buffer` must point to at least `n_bins`
// writable f64 slots.
enum SpinStatus spinentropy_binned_pmf(const struct SpinState *state,
                                       uint64_t n_bins,
                                       enum SpinDirection direction,
                                       enum SpinBinMethod method,
                                       double *buffer);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINENTROPY_H */

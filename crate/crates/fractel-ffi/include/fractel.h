#ifndef FRACTEL_H
#define FRACTEL_H

/* Generated by cbindgen from fractel-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. `Ok` is zero; anything else leaves out-params untouched.
 */
typedef enum {
  FRACTEL_STATUS_OK = 0,
  FRACTEL_STATUS_INVALID_PARAM = 1,
  FRACTEL_STATUS_NON_CONVERGENCE = 2,
  FRACTEL_STATUS_QUADRATURE = 3,
  FRACTEL_STATUS_ACCURACY = 4,
  FRACTEL_STATUS_BRANCH = 5,
  FRACTEL_STATUS_RANGE = 6,
  FRACTEL_STATUS_UNSUPPORTED_ORDER = 7,
  FRACTEL_STATUS_RESOLUTION_EXHAUSTED = 8,
  FRACTEL_STATUS_CONTRACT = 9,
  FRACTEL_STATUS_NULL_POINTER = 10,
  FRACTEL_STATUS_PANIC = 100,
} FractelStatus;

/**
 * Opaque sample container; `count * dim` doubles in row-major order.
 */
typedef struct FractelBatch FractelBatch;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Two-parameter Mittag-Leffler function `E_{nu,psi}(z)`, `nu > 0`.
 */
FractelStatus fractel_mittag_leffler(double nu, double psi, double z, double *out);

/**
 * Airy function `Ai(x)`; total on the real line.
 */
double fractel_airy_ai(double x);

/**
 * Absolutely continuous part of the telegraph law at `x`, time `t`.
 */
FractelStatus fractel_telegraph_pdf(double lambda, double c, double x, double t, double *out);

/**
 * Characteristic function of the telegraph process at frequency `xi`.
 */
FractelStatus fractel_telegraph_char(double lambda, double c, double xi, double t, double *out);

/**
 * Characteristic function of the time-changed field `W_n(t)` at the
 * frequency vector `xi` of length `n`; requires the real branch
 * `c^2 |xi|^{2 beta} < lambda^2`.
 */
FractelStatus fractel_w_char(double nu,
                             double beta,
                             double lambda,
                             double c,
                             const double *xi,
                             size_t n,
                             double t,
                             double *out);

/**
 * Density of the inverse time change `Lcal^nu(t)` at `x > 0`.
 */
FractelStatus fractel_inverse_density(double nu, double lambda, double x, double t, double *out);

/**
 * Density of iterated Brownian motion `B_1(|B_2(t)|)` at `x`.
 */
FractelStatus fractel_iterated_bm_density(double x, double t, double *out);

/**
 * Density of `W_1(t)` for `nu = 1/2`, `beta = 1` at `x`.
 */
FractelStatus fractel_w_density_1d_half(double lambda, double c, double x, double t, double *out);

/**
 * Draws of the telegraph process; one column.
 */
FractelStatus fractel_sample_telegraph(double lambda,
                                       double c,
                                       double t,
                                       size_t count,
                                       uint64_t seed,
                                       FractelBatch **out);

/**
 * Draws of the stable subordinator `H^nu(t)`, `nu` in `(0, 1)`; one column.
 */
FractelStatus fractel_sample_subordinator(double nu,
                                          double t,
                                          size_t count,
                                          uint64_t seed,
                                          FractelBatch **out);

/**
 * Draws of the time-changed field `W_n(t)`; `n` columns per row.
 */
FractelStatus fractel_sample_w(double nu,
                               double beta,
                               double lambda,
                               double c,
                               size_t n,
                               double t,
                               size_t count,
                               uint64_t seed,
                               FractelBatch **out);

/**
 * Draws of the telegraph process run at reflected Brownian time; one column.
 */
FractelStatus fractel_sample_tb(double lambda,
                                double c,
                                double t,
                                size_t count,
                                uint64_t seed,
                                FractelBatch **out);

/**
 * Number of rows in a batch; zero for a null handle.
 */
size_t fractel_batch_len(const FractelBatch *batch);

/**
 * Number of columns per row; zero for a null handle.
 */
size_t fractel_batch_dim(const FractelBatch *batch);

/**
 * Pointer to the row-major data, valid until `fractel_batch_free`.
 */
const double *fractel_batch_data(const FractelBatch *batch);

/**
 * Release a batch. A null handle is a no-op.
 */
void fractel_batch_free(FractelBatch *batch);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACTEL_H */

/* C interface for the power-Maxwell lifetime toolkit. */

#ifndef PMAD_H
#define PMAD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result discriminant for every fallible call.
typedef enum {
  PMAD_OK = 0,
  PMAD_ERR_DOMAIN = 1,
  PMAD_ERR_DIVERGENT = 2,
  PMAD_ERR_OVERFLOW = 3,
  PMAD_ERR_NO_CONVERGENCE = 4,
  PMAD_ERR_SINGULAR = 5,
  PMAD_ERR_INVALID_DATA = 6,
  PMAD_ERR_IO = 7,
  PMAD_ERR_NULL_POINTER = 8,
  PMAD_ERR_PANIC = 9,
} pmad_status;

// Opaque dataset handle.
typedef struct pmad_dataset pmad_dataset;

// Opaque parameter pair handle.
typedef struct pmad_params pmad_params;

// Opaque seeded sampler handle.
typedef struct pmad_sampler pmad_sampler;

// Flat maximum-likelihood fit result. Optional quantities (variances,
// interval endpoints) are NaN when unavailable.
typedef struct {
  double alpha_hat;
  double beta_hat;
  double loglik;
  double var_alpha;
  double var_beta;
  double ci_alpha_lo;
  double ci_alpha_hi;
  double ci_beta_lo;
  double ci_beta_hi;
  double mttf;
  double survival_at_t;
  double hazard_at_t;
  double level;
  double t_eval;
  // 1 when the optimizer converged, 0 otherwise.
  int32_t converged;
  size_t iterations;
} pmad_fit_result;

// Flat Bayes result: Lindley point estimates plus the quadrature
// posterior means they are validated against.
typedef struct {
  double alpha_lindley;
  double beta_lindley;
  double alpha_oracle;
  double beta_oracle;
} pmad_bayes_result;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread. Never null.
const char *pmad_last_error_message(void);

// Create a parameter pair; both values must be positive and finite.
//
// # Safety
// `out` must point to writable storage for one pointer.
pmad_status pmad_params_new(double alpha, double beta, pmad_params **out);

// Destroy a parameter handle; null is a no-op.
//
// # Safety
// `p` must be a pointer returned by `pmad_params_new`, not yet freed.
void pmad_params_free(pmad_params *p);

// Density at `x >= 0`.
//
// # Safety
// `p` must be a live handle from `pmad_params_new`; `out` must point
// to writable storage for one double.
pmad_status pmad_pdf(const pmad_params *p, double x, double *out);

// Distribution function at `x >= 0`.
//
// # Safety
// `p` must be a live handle from `pmad_params_new`; `out` must point
// to writable storage for one double.
pmad_status pmad_cdf(const pmad_params *p, double x, double *out);

// Survival function at `x >= 0`.
//
// # Safety
// `p` must be a live handle from `pmad_params_new`; `out` must point
// to writable storage for one double.
pmad_status pmad_survival(const pmad_params *p, double x, double *out);

// Hazard rate at `x > 0`.
//
// # Safety
// `p` must be a live handle from `pmad_params_new`; `out` must point
// to writable storage for one double.
pmad_status pmad_hazard(const pmad_params *p, double x, double *out);

// Quantile at probability `u` in [0, 1).
//
// # Safety
// `p` must be a live handle from `pmad_params_new`; `out` must point
// to writable storage for one double.
pmad_status pmad_quantile(const pmad_params *p, double u, double *out);

// Copy `len` strictly positive, finite values into a dataset handle.
//
// # Safety
// `values` must point to `len` readable doubles; `out` must point to
// writable storage for one pointer.
pmad_status pmad_dataset_new(const double *values, size_t len, pmad_dataset **out);

// Destroy a dataset handle; null is a no-op.
//
// # Safety
// `d` must be a pointer returned by `pmad_dataset_new`, not yet freed.
void pmad_dataset_free(pmad_dataset *d);

// Maximum-likelihood fit: needs at least 3 observations, `t_eval > 0`,
// `level` in (0, 1). Non-convergence is reported in the result struct,
// not as a status.
//
// # Safety
// `d` must be a live dataset handle; `out` must point to writable
// storage for one `pmad_fit_result`.
pmad_status pmad_fit_mle(const pmad_dataset *d, double t_eval, double level, pmad_fit_result *out);

// Bayes fit under gamma priors centered at (prior_mean_alpha,
// prior_mean_beta) with the given common variance: Lindley estimates
// plus quadrature posterior means.
//
// # Safety
// `d` must be a live dataset handle; `out` must point to writable
// storage for one `pmad_bayes_result`.
pmad_status pmad_fit_bayes(const pmad_dataset *d,
                           double prior_mean_alpha,
                           double prior_mean_beta,
                           double prior_variance,
                           pmad_bayes_result *out);

// Create a sampler on substream `stream` of `seed`. Identical
// (params, seed, stream) triples reproduce identical draw sequences on
// every platform.
//
// # Safety
// `p` must be a live params handle; `out` must point to writable
// storage for one pointer.
pmad_status pmad_sampler_new(const pmad_params *p,
                             uint64_t seed,
                             uint64_t stream,
                             pmad_sampler **out);

// Destroy a sampler handle; null is a no-op.
//
// # Safety
// `s` must be a pointer returned by `pmad_sampler_new`, not yet freed.
void pmad_sampler_free(pmad_sampler *s);

// Fill `buf` with `len` draws.
//
// # Safety
// `s` must be a live sampler handle; `buf` must point to `len`
// writable doubles.
pmad_status pmad_sample_fill(pmad_sampler *s, double *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PMAD_H */

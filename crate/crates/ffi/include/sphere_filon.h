#ifndef SPHERE_FILON_H
#define SPHERE_FILON_H

#include <stddef.h>
#include <stdint.h>

typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_NULL_POINTER = 1,
  SF_STATUS_INVALID_ARGUMENT = 2,
  SF_STATUS_CONVERGENCE = 3,
  SF_STATUS_BUFFER_TOO_SMALL = 4,
  SF_STATUS_PANIC = 5,
} SfStatus;

/*
 Spherical interpolant handle.
 */
typedef struct SfInterpolant SfInterpolant;

/*
 Gauss-Lobatto rule handle.
 */
typedef struct SfRule SfRule;

typedef struct SfComplex {
  double re;
  double im;
} SfComplex;

typedef struct SfCubatureResult {
  struct SfComplex value;
  size_t order;
  double kappa;
  /*
   Endpoint residual of the Legendre form of the ring means.
   */
  double endpoint_residual;
  /*
   Magnitude of the top Legendre coefficient.
   */
  double tail;
} SfCubatureResult;

/*
 `F(θ, φ)` supplied by the caller. Called on the calling thread only.
 */
typedef struct SfComplex (*SfSphereCallback)(double theta, double phi, void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copy the calling thread's last error message into `buf` (NUL-terminated,
 truncated to `len`). Returns the length the full message needs, including
 the terminator. `buf` may be null to query the length.

 # Safety
 `buf` must be null or valid for `len` bytes.
 */
size_t sf_last_error_message(char *buf, size_t len);

/*
 Build the Gauss-Lobatto rule of order `order ≥ 2` (`order + 1` nodes).

 # Safety
 `out` must be valid for a write.
 */
enum SfStatus sf_rule_new(size_t order, struct SfRule **out);

/*
 # Safety
 `rule` must be null or a handle from [`sf_rule_new`] not yet freed.
 */
void sf_rule_free(struct SfRule *rule);

/*
 Number of nodes, `order + 1`; 0 for a null handle.

 # Safety
 `rule` must be null or a live handle.
 */
size_t sf_rule_len(const struct SfRule *rule);

/*
 Ascending nodes into `out[0..order+1]`.

 # Safety
 `rule` must be a live handle; `out` valid for `len` doubles.
 */
enum SfStatus sf_rule_nodes(const struct SfRule *rule, double *out, size_t len);

/*
 Weights into `out[0..order+1]`.

 # Safety
 `rule` must be a live handle; `out` valid for `len` doubles.
 */
enum SfStatus sf_rule_weights(const struct SfRule *rule, double *out, size_t len);

/*
 `j_0(κ), …, j_{n_max}(κ)` for `κ > 0` into `out[0..n_max+1]`.

 # Safety
 `out` valid for `len` doubles.
 */
enum SfStatus sf_spherical_bessel_j(size_t n_max, double kappa, double *out, size_t len);

/*
 `μ_n(κ) = ∫ P_n(x) e^{iκx} dx`, `n = 0..=n_max`, for `κ ≥ 0`.

 # Safety
 `out` valid for `len` values.
 */
enum SfStatus sf_legendre_moments(size_t n_max, double kappa, struct SfComplex *out, size_t len);

/*
 Grid colatitudes `θ_0 = 0, …, θ_N = π` into `out[0..order+1]`.

 # Safety
 `out` valid for `len` doubles.
 */
enum SfStatus sf_grid_theta(size_t order, double *out, size_t len);

/*
 Grid azimuths `kπ/N`, `k = -N+1..N`, into `out[0..2*order]`.

 # Safety
 `out` valid for `len` doubles.
 */
enum SfStatus sf_grid_phi(size_t order, double *out, size_t len);

/*
 Interpolant from `(order+1) × 2·order` samples, row-major by latitude
 with azimuths in the order of [`sf_grid_phi`].

 # Safety
 `samples` valid for `len` values; `out` valid for a write.
 */
enum SfStatus sf_interpolant_new(size_t order,
                                 const struct SfComplex *samples,
                                 size_t len,
                                 struct SfInterpolant **out);

/*
 # Safety
 `interp` must be null or a live handle.
 */
void sf_interpolant_free(struct SfInterpolant *interp);

/*
 Value at `(θ, φ)`.

 # Safety
 `interp` must be a live handle; `out` valid for a write.
 */
enum SfStatus sf_interpolant_eval(const struct SfInterpolant *interp,
                                  double theta,
                                  double phi,
                                  struct SfComplex *out);

/*
 `∂θ` and `(1/sin θ)∂φ` at an interior point.

 # Safety
 `interp` must be a live handle; outputs valid for a write.
 */
enum SfStatus sf_interpolant_gradient(const struct SfInterpolant *interp,
                                      double theta,
                                      double phi,
                                      struct SfComplex *d_theta,
                                      struct SfComplex *d_phi);

/*
 Cubature of `∫ F e^{iκ cos θ} dS` from grid samples laid out as for
 [`sf_interpolant_new`].

 # Safety
 `samples` valid for `len` values; `out` valid for a write.
 */
enum SfStatus sf_cubature_from_samples(size_t order,
                                       const struct SfComplex *samples,
                                       size_t len,
                                       double kappa,
                                       struct SfCubatureResult *out);

/*
 Cubature of `∫ F e^{iκ cos θ} dS`, calling `f` once per grid point
 (poles once each).

 # Safety
 `f` must be safe to call with `user_data`; `out` valid for a write.
 */
enum SfStatus sf_cubature(SfSphereCallback f,
                          void *user_data,
                          size_t order,
                          double kappa,
                          struct SfCubatureResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHERE_FILON_H */

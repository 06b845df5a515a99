/* C interface to the skinlab spectral laboratory. Generated by cbindgen; do not edit. */

#ifndef SKINLAB_H
#define SKINLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call in this API.
typedef enum SkinlabStatus {
  SKINLAB_STATUS_OK = 0,
  SKINLAB_STATUS_NULL_POINTER = 1,
  SKINLAB_STATUS_INVALID_ARGUMENT = 2,
  SKINLAB_STATUS_OVERFLOW = 3,
  SKINLAB_STATUS_NOT_SYMMETRIZABLE = 4,
  SKINLAB_STATUS_NO_CONVERGENCE = 5,
  SKINLAB_STATUS_NOT_TOEPLITZ = 6,
  SKINLAB_STATUS_DEGENERATE_FIT = 7,
  SKINLAB_STATUS_DIMENSION_MISMATCH = 8,
  SKINLAB_STATUS_RESIDUAL_TOO_LARGE = 9,
  SKINLAB_STATUS_BUFFER_TOO_SMALL = 10,
  SKINLAB_STATUS_IO = 11,
} SkinlabStatus;

// Opaque resonator chain.
typedef struct SkinlabChain SkinlabChain;

// Opaque tridiagonal matrix.
typedef struct SkinlabMatrix SkinlabMatrix;

// Opaque eigendecomposition.
typedef struct SkinlabSpectrum SkinlabSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build an equally spaced chain of `n` identical resonators.
//
// # Safety
// `out` must be a valid pointer; the returned handle must be released with
// `skinlab_chain_free`.
enum SkinlabStatus skinlab_chain_uniform(size_t n,
                                         double ell,
                                         double s,
                                         double gamma,
                                         struct SkinlabChain **out);

// # Safety
// `chain` must come from this API; `out` must be valid.
enum SkinlabStatus skinlab_chain_with_contrast(const struct SkinlabChain *chain,
                                               double v_b,
                                               double delta,
                                               struct SkinlabChain **out);

// Uniform spacing disorder on `[-eps, eps]`, deterministic in `seed`.
//
// # Safety
// `chain` must come from this API; `out` must be valid.
enum SkinlabStatus skinlab_chain_spacing_disorder(const struct SkinlabChain *chain,
                                                  double eps,
                                                  uint64_t seed,
                                                  struct SkinlabChain **out);

// Uniform gauge disorder on `[-eps, eps]`, deterministic in `seed`.
//
// # Safety
// `chain` must come from this API; `out` must be valid.
enum SkinlabStatus skinlab_chain_gauge_disorder(const struct SkinlabChain *chain,
                                                double eps,
                                                uint64_t seed,
                                                struct SkinlabChain **out);

// Number of resonators, 0 for a null handle.
//
// # Safety
// `chain` must be null or come from this API.
size_t skinlab_chain_n(const struct SkinlabChain *chain);

// # Safety
// `chain` must be null or an unreleased handle from this API.
void skinlab_chain_free(struct SkinlabChain *chain);

// Gauge capacitance matrix of a chain.
//
// # Safety
// `chain` must come from this API; `out` must be valid.
enum SkinlabStatus skinlab_gauge_capacitance(const struct SkinlabChain *chain,
                                             struct SkinlabMatrix **out);

// Tridiagonal Toeplitz matrix with corner corrections `a`, `b`.
//
// # Safety
// `out` must be valid.
enum SkinlabStatus skinlab_corner_toeplitz(double alpha,
                                           double eta,
                                           double beta,
                                           double a,
                                           double b,
                                           size_t n,
                                           struct SkinlabMatrix **out);

// Shift every entry by an independent uniform draw on `[-eps, eps]`;
// reports the realised maximum draw and whether `eps` could flip an
// off-diagonal sign.
//
// # Safety
// `matrix` must come from this API; all out-pointers must be valid.
enum SkinlabStatus skinlab_matrix_entrywise_perturb(const struct SkinlabMatrix *matrix,
                                                    double eps,
                                                    uint64_t seed,
                                                    struct SkinlabMatrix **out,
                                                    double *out_effective_eps,
                                                    bool *out_sign_warning);

// # Safety
// `matrix` must be null or come from this API.
size_t skinlab_matrix_n(const struct SkinlabMatrix *matrix);

// Copy the main diagonal (n values) into `buf`.
//
// # Safety
// `matrix` must come from this API; `buf` must hold `len` doubles.
enum SkinlabStatus skinlab_matrix_copy_diag(const struct SkinlabMatrix *matrix,
                                            double *buf,
                                            size_t len);

// Copy the subdiagonal (n-1 values) into `buf`.
//
// # Safety
// `matrix` must come from this API; `buf` must hold `len` doubles.
enum SkinlabStatus skinlab_matrix_copy_sub(const struct SkinlabMatrix *matrix,
                                           double *buf,
                                           size_t len);

// Copy the superdiagonal (n-1 values) into `buf`.
//
// # Safety
// `matrix` must come from this API; `buf` must hold `len` doubles.
enum SkinlabStatus skinlab_matrix_copy_sup(const struct SkinlabMatrix *matrix,
                                           double *buf,
                                           size_t len);

// Recover `(alpha, eta, beta, a, b)` from a Toeplitz-with-corners matrix.
//
// # Safety
// `matrix` must come from this API; the five out-pointers must be valid.
enum SkinlabStatus skinlab_matrix_toeplitz_params(const struct SkinlabMatrix *matrix,
                                                  double tol,
                                                  double *out_alpha,
                                                  double *out_eta,
                                                  double *out_beta,
                                                  double *out_a,
                                                  double *out_b);

// Spectral norm of a symmetric tridiagonal matrix.
//
// # Safety
// `matrix` must come from this API; `out` must be valid.
enum SkinlabStatus skinlab_spectral_norm(const struct SkinlabMatrix *matrix, double *out);

// # Safety
// `matrix` must be null or an unreleased handle from this API.
void skinlab_matrix_free(struct SkinlabMatrix *matrix);

// Full eigendecomposition with residual certificates.
//
// # Safety
// `matrix` must come from this API; `out` must be valid.
enum SkinlabStatus skinlab_full_spectrum(const struct SkinlabMatrix *matrix,
                                         struct SkinlabSpectrum **out);

// # Safety
// `spectrum` must be null or come from this API.
size_t skinlab_spectrum_n(const struct SkinlabSpectrum *spectrum);

// Copy the ascending eigenvalues into `buf`.
//
// # Safety
// `spectrum` must come from this API; `buf` must hold `len` doubles.
enum SkinlabStatus skinlab_spectrum_copy_eigenvalues(const struct SkinlabSpectrum *spectrum,
                                                     double *buf,
                                                     size_t len);

// Copy the per-pair residuals into `buf`.
//
// # Safety
// `spectrum` must come from this API; `buf` must hold `len` doubles.
enum SkinlabStatus skinlab_spectrum_copy_residuals(const struct SkinlabSpectrum *spectrum,
                                                   double *buf,
                                                   size_t len);

// Copy the eigenvector paired with the k-th ascending eigenvalue
// (0-based k) into `buf`.
//
// # Safety
// `spectrum` must come from this API; `buf` must hold `len` doubles.
enum SkinlabStatus skinlab_spectrum_copy_eigenvector(const struct SkinlabSpectrum *spectrum,
                                                     size_t k,
                                                     double *buf,
                                                     size_t len);

// # Safety
// `spectrum` must be null or an unreleased handle from this API.
void skinlab_spectrum_free(struct SkinlabSpectrum *spectrum);

// Leading-order subwavelength frequency `v_b * sqrt(delta * lambda)`.
//
// # Safety
// `out` must be valid.
enum SkinlabStatus skinlab_subwavelength_frequency(double lambda,
                                                   double v_b,
                                                   double delta,
                                                   double *out);

// Eigenvalue stability constant `C1(eta, beta, eps)`; `eta` and `beta` are
// the off-diagonal magnitudes, smaller first.
//
// # Safety
// `out` must be valid.
enum SkinlabStatus skinlab_stability_c1(double eta, double beta, double eps, size_t n, double *out);

// Constants `C2` and `C3` of the eigenvector stability bound.
//
// # Safety
// `out_c2` and `out_c3` must be valid.
enum SkinlabStatus skinlab_stability_c2_c3(double eta,
                                           double beta,
                                           double eps,
                                           size_t n,
                                           double *out_c2,
                                           double *out_c3);

// Contraction factor `rho` of mode `k` (2-based indexing into the nonzero
// branch) and whether the perturbed eigenvector is guaranteed to keep its
// exponential decay.
//
// # Safety
// `out_rho` and `out_ok` must be valid.
enum SkinlabStatus skinlab_decay_condition(size_t k,
                                           double eta,
                                           double beta,
                                           double eps,
                                           size_t n,
                                           double *out_rho,
                                           bool *out_ok);

// Envelope bound `zeta_{k,j}` on the scaled eigenvector error.
//
// # Safety
// `out` must be valid.
enum SkinlabStatus skinlab_zeta_bound(size_t k,
                                      size_t j,
                                      double eta,
                                      double beta,
                                      double eps,
                                      size_t n,
                                      double *out);

// Compare the spectra of an unperturbed corner-Toeplitz matrix and a
// perturbation of it against the `C1 * eps` bound.
//
// # Safety
// Both matrices must come from this API; out-pointers must be valid.
enum SkinlabStatus skinlab_check_eigenvalue_stability(const struct SkinlabMatrix *matrix,
                                                      const struct SkinlabMatrix *perturbed,
                                                      double *out_effective_eps,
                                                      double *out_max_deviation,
                                                      double *out_bound,
                                                      bool *out_pass);

// Least-squares decay rate of `ln |v_j|` over entries above
// `floor_rel * max|v|`.
//
// # Safety
// `v` must point to `len` doubles; `out` must be valid.
enum SkinlabStatus skinlab_fit_decay_rate(const double *v,
                                          size_t len,
                                          double floor_rel,
                                          double *out);

// `||v||_inf / ||v||_2`.
//
// # Safety
// `v` must point to `len` doubles; `out` must be valid.
enum SkinlabStatus skinlab_localisation_ratio(const double *v, size_t len, double *out);

// Whether `|v|` attains its maximum within the first `edge_sites` sites.
//
// # Safety
// `v` must point to `len` doubles; `out` must be valid.
enum SkinlabStatus skinlab_edge_accumulated(const double *v,
                                            size_t len,
                                            size_t edge_sites,
                                            bool *out);

// Winding of the symbol `alpha + eta e^{i theta} + beta e^{-i theta}`
// around `lambda_re + i lambda_im`. Pass `samples = 0` for the default
// discretisation and `boundary_tol <= 0` for the default tolerance.
// `out_boundary` is set when the point is too close to the curve; the
// winding is only meaningful when it is false.
//
// # Safety
// The three out-pointers must be valid.
enum SkinlabStatus skinlab_winding_number(double alpha,
                                          double eta,
                                          double beta,
                                          size_t samples,
                                          double lambda_re,
                                          double lambda_im,
                                          double boundary_tol,
                                          int32_t *out_winding,
                                          bool *out_boundary,
                                          double *out_min_distance);

// Real interval enclosed by the symbol ellipse.
//
// # Safety
// `out_lo` and `out_hi` must be valid.
enum SkinlabStatus skinlab_protected_interval(double alpha,
                                              double eta,
                                              double beta,
                                              double *out_lo,
                                              double *out_hi);

// Fraction of the eigenvalues with winding -1 under the given symbol.
// Pass `samples = 0` and `boundary_tol <= 0` for the defaults.
//
// # Safety
// `eigenvalues` must point to `len` doubles; `out` must be valid.
enum SkinlabStatus skinlab_protected_fraction(const double *eigenvalues,
                                              size_t len,
                                              double alpha,
                                              double eta,
                                              double beta,
                                              size_t samples,
                                              double boundary_tol,
                                              double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKINLAB_H */

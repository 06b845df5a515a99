//! C ABI for the skinlab core: opaque handles for chains, matrices and
//! spectra, status-code error reporting, and plain-buffer accessors so other
//! languages can bind without knowing any Rust layout.
//!
//! Ownership rules: every constructor hands back a pointer the caller must
//! release with the matching `*_free`; all other pointers are borrowed for
//! the duration of the call. Buffers are caller-allocated and their lengths
//! are validated before writing.

use std::ptr;

use skinlab::capmat::{
    corner_toeplitz, entrywise_perturb, gauge_capacitance, toeplitz_params_of, ToeplitzParams,
    TriMatrix,
};
use skinlab::chain::{subwavelength_frequency, ChainConfig};
use skinlab::ensemble::{edge_accumulated, localisation_ratio};
use skinlab::error::Error;
use skinlab::spectra::{full_spectrum, spectral_norm, SpectralDecomposition};
use skinlab::stability::{
    c1, c2_c3, check_eigenvalue_stability, decay_condition, fit_decay_rate, zeta_bound,
    BoundInputs,
};
use skinlab::topology::{protected_fraction, protected_interval, winding_number, SymbolSpec};

/// Result of every fallible call in this API.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkinlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Overflow = 3,
    NotSymmetrizable = 4,
    NoConvergence = 5,
    NotToeplitz = 6,
    DegenerateFit = 7,
    DimensionMismatch = 8,
    ResidualTooLarge = 9,
    BufferTooSmall = 10,
    Io = 11,
}

fn status_of(e: &Error) -> SkinlabStatus {
    match e {
        Error::InvalidArgument(_) | Error::Config(_) => SkinlabStatus::InvalidArgument,
        Error::GaugeOverflow { .. } | Error::ScaleOverflow { .. } | Error::BoundOverflow { .. } => {
            SkinlabStatus::Overflow
        }
        Error::NotSymmetrizable { .. } => SkinlabStatus::NotSymmetrizable,
        Error::NoConvergence { .. } => SkinlabStatus::NoConvergence,
        Error::NotToeplitz { .. } => SkinlabStatus::NotToeplitz,
        Error::DegenerateFit { .. } => SkinlabStatus::DegenerateFit,
        Error::DimensionMismatch { .. } => SkinlabStatus::DimensionMismatch,
        Error::ResidualTooLarge { .. } => SkinlabStatus::ResidualTooLarge,
        Error::Io { .. } => SkinlabStatus::Io,
    }
}

/// Opaque resonator chain.
pub struct SkinlabChain(ChainConfig);

/// Opaque tridiagonal matrix.
pub struct SkinlabMatrix(TriMatrix);

/// Opaque eigendecomposition.
pub struct SkinlabSpectrum(SpectralDecomposition);

unsafe fn write_out<T>(out: *mut T, value: T) -> SkinlabStatus {
    if out.is_null() {
        return SkinlabStatus::NullPointer;
    }
    unsafe { ptr::write(out, value) };
    SkinlabStatus::Ok
}

unsafe fn slice_in<'a>(data: *const f64, len: usize) -> Option<&'a [f64]> {
    if data.is_null() {
        return None;
    }
    Some(unsafe { std::slice::from_raw_parts(data, len) })
}

fn copy_to(buf: *mut f64, len: usize, values: &[f64]) -> SkinlabStatus {
    if buf.is_null() {
        return SkinlabStatus::NullPointer;
    }
    if len < values.len() {
        return SkinlabStatus::BufferTooSmall;
    }
    unsafe { ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len()) };
    SkinlabStatus::Ok
}

// ---------------------------------------------------------------------------
// chains

/// Build an equally spaced chain of `n` identical resonators.
///
/// # Safety
/// `out` must be a valid pointer; the returned handle must be released with
/// `skinlab_chain_free`.
#[no_mangle]
pub unsafe extern "C" fn skinlab_chain_uniform(
    n: usize,
    ell: f64,
    s: f64,
    gamma: f64,
    out: *mut *mut SkinlabChain,
) -> SkinlabStatus {
    match ChainConfig::uniform(n, ell, s, gamma) {
        Ok(chain) => unsafe { write_out(out, Box::into_raw(Box::new(SkinlabChain(chain)))) },
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `chain` must come from this API; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_chain_with_contrast(
    chain: *const SkinlabChain,
    v_b: f64,
    delta: f64,
    out: *mut *mut SkinlabChain,
) -> SkinlabStatus {
    let Some(chain) = (unsafe { chain.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    match chain.0.clone().with_contrast(v_b, delta) {
        Ok(c) => unsafe { write_out(out, Box::into_raw(Box::new(SkinlabChain(c)))) },
        Err(e) => status_of(&e),
    }
}

/// Uniform spacing disorder on `[-eps, eps]`, deterministic in `seed`.
///
/// # Safety
/// `chain` must come from this API; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_chain_spacing_disorder(
    chain: *const SkinlabChain,
    eps: f64,
    seed: u64,
    out: *mut *mut SkinlabChain,
) -> SkinlabStatus {
    let Some(chain) = (unsafe { chain.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    match chain.0.with_spacing_disorder(eps, seed) {
        Ok(c) => unsafe { write_out(out, Box::into_raw(Box::new(SkinlabChain(c)))) },
        Err(e) => status_of(&e),
    }
}

/// Uniform gauge disorder on `[-eps, eps]`, deterministic in `seed`.
///
/// # Safety
/// `chain` must come from this API; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_chain_gauge_disorder(
    chain: *const SkinlabChain,
    eps: f64,
    seed: u64,
    out: *mut *mut SkinlabChain,
) -> SkinlabStatus {
    let Some(chain) = (unsafe { chain.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    match chain.0.with_gauge_disorder(eps, seed) {
        Ok(c) => unsafe { write_out(out, Box::into_raw(Box::new(SkinlabChain(c)))) },
        Err(e) => status_of(&e),
    }
}

/// Number of resonators, 0 for a null handle.
///
/// # Safety
/// `chain` must be null or come from this API.
#[no_mangle]
pub unsafe extern "C" fn skinlab_chain_n(chain: *const SkinlabChain) -> usize {
    unsafe { chain.as_ref() }.map_or(0, |c| c.0.n())
}

/// # Safety
/// `chain` must be null or an unreleased handle from this API.
#[no_mangle]
pub unsafe extern "C" fn skinlab_chain_free(chain: *mut SkinlabChain) {
    if !chain.is_null() {
        drop(unsafe { Box::from_raw(chain) });
    }
}

// ---------------------------------------------------------------------------
// matrices

/// Gauge capacitance matrix of a chain.
///
/// # Safety
/// `chain` must come from this API; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_gauge_capacitance(
    chain: *const SkinlabChain,
    out: *mut *mut SkinlabMatrix,
) -> SkinlabStatus {
    let Some(chain) = (unsafe { chain.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    match gauge_capacitance(&chain.0) {
        Ok(m) => unsafe { write_out(out, Box::into_raw(Box::new(SkinlabMatrix(m)))) },
        Err(e) => status_of(&e),
    }
}

/// Tridiagonal Toeplitz matrix with corner corrections `a`, `b`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_corner_toeplitz(
    alpha: f64,
    eta: f64,
    beta: f64,
    a: f64,
    b: f64,
    n: usize,
    out: *mut *mut SkinlabMatrix,
) -> SkinlabStatus {
    let params = match ToeplitzParams::new(alpha, eta, beta, a, b) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match corner_toeplitz(&params, n) {
        Ok(m) => unsafe { write_out(out, Box::into_raw(Box::new(SkinlabMatrix(m)))) },
        Err(e) => status_of(&e),
    }
}

/// Shift every entry by an independent uniform draw on `[-eps, eps]`;
/// reports the realised maximum draw and whether `eps` could flip an
/// off-diagonal sign.
///
/// # Safety
/// `matrix` must come from this API; all out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_matrix_entrywise_perturb(
    matrix: *const SkinlabMatrix,
    eps: f64,
    seed: u64,
    out: *mut *mut SkinlabMatrix,
    out_effective_eps: *mut f64,
    out_sign_warning: *mut bool,
) -> SkinlabStatus {
    let Some(matrix) = (unsafe { matrix.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    match entrywise_perturb(&matrix.0, eps, seed) {
        Ok(p) => unsafe {
            let status = write_out(out_effective_eps, p.effective_eps);
            if status != SkinlabStatus::Ok {
                return status;
            }
            let status = write_out(out_sign_warning, p.sign_warning);
            if status != SkinlabStatus::Ok {
                return status;
            }
            write_out(out, Box::into_raw(Box::new(SkinlabMatrix(p.matrix))))
        },
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `matrix` must be null or come from this API.
#[no_mangle]
pub unsafe extern "C" fn skinlab_matrix_n(matrix: *const SkinlabMatrix) -> usize {
    unsafe { matrix.as_ref() }.map_or(0, |m| m.0.n())
}

/// Copy the main diagonal (n values) into `buf`.
///
/// # Safety
/// `matrix` must come from this API; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skinlab_matrix_copy_diag(
    matrix: *const SkinlabMatrix,
    buf: *mut f64,
    len: usize,
) -> SkinlabStatus {
    let Some(matrix) = (unsafe { matrix.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    copy_to(buf, len, matrix.0.diag())
}

/// Copy the subdiagonal (n-1 values) into `buf`.
///
/// # Safety
/// `matrix` must come from this API; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skinlab_matrix_copy_sub(
    matrix: *const SkinlabMatrix,
    buf: *mut f64,
    len: usize,
) -> SkinlabStatus {
    let Some(matrix) = (unsafe { matrix.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    copy_to(buf, len, matrix.0.sub())
}

/// Copy the superdiagonal (n-1 values) into `buf`.
///
/// # Safety
/// `matrix` must come from this API; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skinlab_matrix_copy_sup(
    matrix: *const SkinlabMatrix,
    buf: *mut f64,
    len: usize,
) -> SkinlabStatus {
    let Some(matrix) = (unsafe { matrix.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    copy_to(buf, len, matrix.0.sup())
}

/// Recover `(alpha, eta, beta, a, b)` from a Toeplitz-with-corners matrix.
///
/// # Safety
/// `matrix` must come from this API; the five out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_matrix_toeplitz_params(
    matrix: *const SkinlabMatrix,
    tol: f64,
    out_alpha: *mut f64,
    out_eta: *mut f64,
    out_beta: *mut f64,
    out_a: *mut f64,
    out_b: *mut f64,
) -> SkinlabStatus {
    let Some(matrix) = (unsafe { matrix.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    match toeplitz_params_of(&matrix.0, tol) {
        Ok(p) => unsafe {
            for (out, value) in [
                (out_alpha, p.alpha),
                (out_eta, p.eta),
                (out_beta, p.beta),
                (out_a, p.a),
                (out_b, p.b),
            ] {
                let status = write_out(out, value);
                if status != SkinlabStatus::Ok {
                    return status;
                }
            }
            SkinlabStatus::Ok
        },
        Err(e) => status_of(&e),
    }
}

/// Spectral norm of a symmetric tridiagonal matrix.
///
/// # Safety
/// `matrix` must come from this API; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_spectral_norm(
    matrix: *const SkinlabMatrix,
    out: *mut f64,
) -> SkinlabStatus {
    let Some(matrix) = (unsafe { matrix.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    match spectral_norm(&matrix.0) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `matrix` must be null or an unreleased handle from this API.
#[no_mangle]
pub unsafe extern "C" fn skinlab_matrix_free(matrix: *mut SkinlabMatrix) {
    if !matrix.is_null() {
        drop(unsafe { Box::from_raw(matrix) });
    }
}

// ---------------------------------------------------------------------------
// spectra

/// Full eigendecomposition with residual certificates.
///
/// # Safety
/// `matrix` must come from this API; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_full_spectrum(
    matrix: *const SkinlabMatrix,
    out: *mut *mut SkinlabSpectrum,
) -> SkinlabStatus {
    let Some(matrix) = (unsafe { matrix.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    match full_spectrum(&matrix.0) {
        Ok(sd) => unsafe { write_out(out, Box::into_raw(Box::new(SkinlabSpectrum(sd)))) },
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `spectrum` must be null or come from this API.
#[no_mangle]
pub unsafe extern "C" fn skinlab_spectrum_n(spectrum: *const SkinlabSpectrum) -> usize {
    unsafe { spectrum.as_ref() }.map_or(0, |s| s.0.n())
}

/// Copy the ascending eigenvalues into `buf`.
///
/// # Safety
/// `spectrum` must come from this API; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skinlab_spectrum_copy_eigenvalues(
    spectrum: *const SkinlabSpectrum,
    buf: *mut f64,
    len: usize,
) -> SkinlabStatus {
    let Some(spectrum) = (unsafe { spectrum.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    copy_to(buf, len, spectrum.0.eigenvalues())
}

/// Copy the per-pair residuals into `buf`.
///
/// # Safety
/// `spectrum` must come from this API; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skinlab_spectrum_copy_residuals(
    spectrum: *const SkinlabSpectrum,
    buf: *mut f64,
    len: usize,
) -> SkinlabStatus {
    let Some(spectrum) = (unsafe { spectrum.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    copy_to(buf, len, spectrum.0.residuals())
}

/// Copy the eigenvector paired with the k-th ascending eigenvalue
/// (0-based k) into `buf`.
///
/// # Safety
/// `spectrum` must come from this API; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn skinlab_spectrum_copy_eigenvector(
    spectrum: *const SkinlabSpectrum,
    k: usize,
    buf: *mut f64,
    len: usize,
) -> SkinlabStatus {
    let Some(spectrum) = (unsafe { spectrum.as_ref() }) else {
        return SkinlabStatus::NullPointer;
    };
    if k >= spectrum.0.n() {
        return SkinlabStatus::InvalidArgument;
    }
    copy_to(buf, len, spectrum.0.eigenvector(k))
}

/// # Safety
/// `spectrum` must be null or an unreleased handle from this API.
#[no_mangle]
pub unsafe extern "C" fn skinlab_spectrum_free(spectrum: *mut SkinlabSpectrum) {
    if !spectrum.is_null() {
        drop(unsafe { Box::from_raw(spectrum) });
    }
}

/// Leading-order subwavelength frequency `v_b * sqrt(delta * lambda)`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_subwavelength_frequency(
    lambda: f64,
    v_b: f64,
    delta: f64,
    out: *mut f64,
) -> SkinlabStatus {
    match subwavelength_frequency(lambda, v_b, delta) {
        Ok(w) => unsafe { write_out(out, w) },
        Err(e) => status_of(&e),
    }
}

// ---------------------------------------------------------------------------
// stability bounds

/// Eigenvalue stability constant `C1(eta, beta, eps)`; `eta` and `beta` are
/// the off-diagonal magnitudes, smaller first.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_stability_c1(
    eta: f64,
    beta: f64,
    eps: f64,
    n: usize,
    out: *mut f64,
) -> SkinlabStatus {
    match BoundInputs::new(eta, beta, eps, n) {
        Ok(inputs) => unsafe { write_out(out, c1(&inputs)) },
        Err(e) => status_of(&e),
    }
}

/// Constants `C2` and `C3` of the eigenvector stability bound.
///
/// # Safety
/// `out_c2` and `out_c3` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_stability_c2_c3(
    eta: f64,
    beta: f64,
    eps: f64,
    n: usize,
    out_c2: *mut f64,
    out_c3: *mut f64,
) -> SkinlabStatus {
    match BoundInputs::new(eta, beta, eps, n) {
        Ok(inputs) => {
            let (v2, v3) = c2_c3(&inputs);
            let status = unsafe { write_out(out_c2, v2) };
            if status != SkinlabStatus::Ok {
                return status;
            }
            unsafe { write_out(out_c3, v3) }
        }
        Err(e) => status_of(&e),
    }
}

/// Contraction factor `rho` of mode `k` (2-based indexing into the nonzero
/// branch) and whether the perturbed eigenvector is guaranteed to keep its
/// exponential decay.
///
/// # Safety
/// `out_rho` and `out_ok` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_decay_condition(
    k: usize,
    eta: f64,
    beta: f64,
    eps: f64,
    n: usize,
    out_rho: *mut f64,
    out_ok: *mut bool,
) -> SkinlabStatus {
    let inputs = match BoundInputs::new(eta, beta, eps, n) {
        Ok(i) => i,
        Err(e) => return status_of(&e),
    };
    match decay_condition(k, &inputs) {
        Ok((rho, ok)) => {
            let status = unsafe { write_out(out_rho, rho) };
            if status != SkinlabStatus::Ok {
                return status;
            }
            unsafe { write_out(out_ok, ok) }
        }
        Err(e) => status_of(&e),
    }
}

/// Envelope bound `zeta_{k,j}` on the scaled eigenvector error.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_zeta_bound(
    k: usize,
    j: usize,
    eta: f64,
    beta: f64,
    eps: f64,
    n: usize,
    out: *mut f64,
) -> SkinlabStatus {
    let inputs = match BoundInputs::new(eta, beta, eps, n) {
        Ok(i) => i,
        Err(e) => return status_of(&e),
    };
    match zeta_bound(k, j, &inputs) {
        Ok(z) => unsafe { write_out(out, z) },
        Err(e) => status_of(&e),
    }
}

/// Compare the spectra of an unperturbed corner-Toeplitz matrix and a
/// perturbation of it against the `C1 * eps` bound.
///
/// # Safety
/// Both matrices must come from this API; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_check_eigenvalue_stability(
    matrix: *const SkinlabMatrix,
    perturbed: *const SkinlabMatrix,
    out_effective_eps: *mut f64,
    out_max_deviation: *mut f64,
    out_bound: *mut f64,
    out_pass: *mut bool,
) -> SkinlabStatus {
    let (Some(matrix), Some(perturbed)) =
        (unsafe { matrix.as_ref() }, unsafe { perturbed.as_ref() })
    else {
        return SkinlabStatus::NullPointer;
    };
    match check_eigenvalue_stability(&matrix.0, &perturbed.0) {
        Ok(check) => {
            for (out, value) in [
                (out_effective_eps, check.effective_eps),
                (out_max_deviation, check.max_deviation),
                (out_bound, check.bound),
            ] {
                let status = unsafe { write_out(out, value) };
                if status != SkinlabStatus::Ok {
                    return status;
                }
            }
            unsafe { write_out(out_pass, check.pass) }
        }
        Err(e) => status_of(&e),
    }
}

/// Least-squares decay rate of `ln |v_j|` over entries above
/// `floor_rel * max|v|`.
///
/// # Safety
/// `v` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_fit_decay_rate(
    v: *const f64,
    len: usize,
    floor_rel: f64,
    out: *mut f64,
) -> SkinlabStatus {
    let Some(v) = (unsafe { slice_in(v, len) }) else {
        return SkinlabStatus::NullPointer;
    };
    match fit_decay_rate(v, floor_rel) {
        Ok(slope) => unsafe { write_out(out, slope) },
        Err(e) => status_of(&e),
    }
}

// ---------------------------------------------------------------------------
// localisation metrics and topology

/// `||v||_inf / ||v||_2`.
///
/// # Safety
/// `v` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_localisation_ratio(
    v: *const f64,
    len: usize,
    out: *mut f64,
) -> SkinlabStatus {
    let Some(v) = (unsafe { slice_in(v, len) }) else {
        return SkinlabStatus::NullPointer;
    };
    match localisation_ratio(v) {
        Ok(r) => unsafe { write_out(out, r) },
        Err(e) => status_of(&e),
    }
}

/// Whether `|v|` attains its maximum within the first `edge_sites` sites.
///
/// # Safety
/// `v` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_edge_accumulated(
    v: *const f64,
    len: usize,
    edge_sites: usize,
    out: *mut bool,
) -> SkinlabStatus {
    let Some(v) = (unsafe { slice_in(v, len) }) else {
        return SkinlabStatus::NullPointer;
    };
    unsafe { write_out(out, edge_accumulated(v, edge_sites)) }
}

fn symbol(alpha: f64, eta: f64, beta: f64, samples: usize) -> Result<SymbolSpec, Error> {
    let spec = SymbolSpec::new(alpha, eta, beta)?;
    if samples == 0 {
        Ok(spec)
    } else {
        spec.with_samples(samples)
    }
}

/// Winding of the symbol `alpha + eta e^{i theta} + beta e^{-i theta}`
/// around `lambda_re + i lambda_im`. Pass `samples = 0` for the default
/// discretisation and `boundary_tol <= 0` for the default tolerance.
/// `out_boundary` is set when the point is too close to the curve; the
/// winding is only meaningful when it is false.
///
/// # Safety
/// The three out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_winding_number(
    alpha: f64,
    eta: f64,
    beta: f64,
    samples: usize,
    lambda_re: f64,
    lambda_im: f64,
    boundary_tol: f64,
    out_winding: *mut i32,
    out_boundary: *mut bool,
    out_min_distance: *mut f64,
) -> SkinlabStatus {
    let spec = match symbol(alpha, eta, beta, samples) {
        Ok(s) => s,
        Err(e) => return status_of(&e),
    };
    let tol = if boundary_tol > 0.0 {
        boundary_tol
    } else {
        spec.default_boundary_tol()
    };
    let result = winding_number(&spec, num_complex::Complex64::new(lambda_re, lambda_im), tol);
    let status = unsafe { write_out(out_min_distance, result.min_curve_distance) };
    if status != SkinlabStatus::Ok {
        return status;
    }
    let status = unsafe { write_out(out_boundary, result.winding.is_none()) };
    if status != SkinlabStatus::Ok {
        return status;
    }
    unsafe { write_out(out_winding, result.winding.unwrap_or(0)) }
}

/// Real interval enclosed by the symbol ellipse.
///
/// # Safety
/// `out_lo` and `out_hi` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_protected_interval(
    alpha: f64,
    eta: f64,
    beta: f64,
    out_lo: *mut f64,
    out_hi: *mut f64,
) -> SkinlabStatus {
    let spec = match symbol(alpha, eta, beta, 0) {
        Ok(s) => s,
        Err(e) => return status_of(&e),
    };
    match protected_interval(&spec) {
        Ok((lo, hi)) => {
            let status = unsafe { write_out(out_lo, lo) };
            if status != SkinlabStatus::Ok {
                return status;
            }
            unsafe { write_out(out_hi, hi) }
        }
        Err(e) => status_of(&e),
    }
}

/// Fraction of the eigenvalues with winding -1 under the given symbol.
/// Pass `samples = 0` and `boundary_tol <= 0` for the defaults.
///
/// # Safety
/// `eigenvalues` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skinlab_protected_fraction(
    eigenvalues: *const f64,
    len: usize,
    alpha: f64,
    eta: f64,
    beta: f64,
    samples: usize,
    boundary_tol: f64,
    out: *mut f64,
) -> SkinlabStatus {
    let Some(eigenvalues) = (unsafe { slice_in(eigenvalues, len) }) else {
        return SkinlabStatus::NullPointer;
    };
    let spec = match symbol(alpha, eta, beta, samples) {
        Ok(s) => s,
        Err(e) => return status_of(&e),
    };
    let tol = if boundary_tol > 0.0 {
        boundary_tol
    } else {
        spec.default_boundary_tol()
    };
    unsafe { write_out(out, protected_fraction(eigenvalues, &spec, tol)) }
}

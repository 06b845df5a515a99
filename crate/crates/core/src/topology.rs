//! Toeplitz symbol of the unperturbed operator, winding numbers and the
//! topologically protected region.

use num_complex::Complex64;

use crate::capmat::ToeplitzParams;
use crate::error::{Error, Result};

pub const DEFAULT_SYMBOL_SAMPLES: usize = 4096;

/// Symbol `f(theta) = alpha + eta e^{i theta} + beta e^{-i theta}` with the
/// convention `T(f)_{j,k} = f_hat_{j-k}`: `eta` is the subdiagonal
/// coefficient, `beta` the superdiagonal one. The image is an ellipse
/// centred at `alpha` with semi-axes `|eta + beta|` and `|eta - beta|`.
#[derive(Clone, Copy, Debug)]
pub struct SymbolSpec {
    alpha: f64,
    eta: f64,
    beta: f64,
    samples: usize,
}

impl SymbolSpec {
    pub fn new(alpha: f64, eta: f64, beta: f64) -> Result<Self> {
        if !(eta * beta > 0.0) {
            return Err(Error::invalid(format!(
                "off-diagonal product must be positive, got eta = {eta}, beta = {beta}"
            )));
        }
        if ![alpha, eta, beta].iter().all(|x| x.is_finite()) {
            return Err(Error::invalid("symbol coefficients must be finite"));
        }
        Ok(SymbolSpec {
            alpha,
            eta,
            beta,
            samples: DEFAULT_SYMBOL_SAMPLES,
        })
    }

    pub fn from_params(params: &ToeplitzParams) -> Result<Self> {
        SymbolSpec::new(params.alpha, params.eta, params.beta)
    }

    pub fn with_samples(mut self, samples: usize) -> Result<Self> {
        if samples < 64 {
            return Err(Error::invalid(format!("need at least 64 samples, got {samples}")));
        }
        self.samples = samples;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// `f(theta)`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let (sin, cos) = theta.sin_cos();
        Complex64::new(
            self.alpha + (self.eta + self.beta) * cos,
            (self.eta - self.beta) * sin,
        )
    }

    /// `1e-8 * (|alpha| + |eta| + |beta|)`.
    pub fn default_boundary_tol(&self) -> f64 {
        1e-8 * (self.alpha.abs() + self.eta.abs() + self.beta.abs())
    }
}

/// Winding of the symbol curve around a point; `None` when the point sits
/// within `boundary_tol` of the curve or the accumulated argument is not an
/// integer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindingResult {
    pub winding: Option<i32>,
    pub min_curve_distance: f64,
}

impl WindingResult {
    pub fn is_boundary(&self) -> bool {
        self.winding.is_none()
    }
}

/// The symbol curve sampled on a uniform `theta` grid, reusable across many
/// winding queries against the same symbol.
pub fn symbol_samples(spec: &SymbolSpec) -> Vec<Complex64> {
    let step = 2.0 * std::f64::consts::PI / spec.samples as f64;
    (0..spec.samples).map(|i| spec.eval(i as f64 * step)).collect()
}

fn winding_of_samples(samples: &[Complex64], lambda: Complex64, boundary_tol: f64) -> WindingResult {
    let m = samples.len();
    let min_curve_distance = samples
        .iter()
        .map(|z| (z - lambda).norm())
        .fold(f64::INFINITY, f64::min);
    if min_curve_distance < boundary_tol {
        return WindingResult {
            winding: None,
            min_curve_distance,
        };
    }
    let mut total = 0.0;
    for i in 0..m {
        let z = samples[i] - lambda;
        let w = samples[(i + 1) % m] - lambda;
        // angle between consecutive samples
        let cross = z.re * w.im - z.im * w.re;
        let dot = z.re * w.re + z.im * w.im;
        total += cross.atan2(dot);
    }
    let raw = total / (2.0 * std::f64::consts::PI);
    let nearest = raw.round();
    if (raw - nearest).abs() > 1e-3 {
        return WindingResult {
            winding: None,
            min_curve_distance,
        };
    }
    WindingResult {
        winding: Some(nearest as i32),
        min_curve_distance,
    }
}

/// Accumulate the argument of `f(theta) - lambda` around the sampled circle.
pub fn winding_number(spec: &SymbolSpec, lambda: Complex64, boundary_tol: f64) -> WindingResult {
    winding_of_samples(&symbol_samples(spec), lambda, boundary_tol)
}

/// Real interval enclosed by the symbol ellipse, `(alpha - |eta+beta|,
/// alpha + |eta+beta|)`. The winding there is -1 in the skin-effect
/// orientation `|eta| < |beta|` (and +1 in the mirrored one). Degenerate
/// ellipses `|eta| = |beta|` have no interior and are rejected.
pub fn protected_interval(spec: &SymbolSpec) -> Result<(f64, f64)> {
    let (ea, ba) = (spec.eta.abs(), spec.beta.abs());
    if (ea - ba).abs() <= 1e-12 * (ea + ba) {
        return Err(Error::invalid(
            "symbol ellipse is degenerate: |eta| = |beta| has empty interior",
        ));
    }
    let half = (spec.eta + spec.beta).abs();
    Ok((spec.alpha - half, spec.alpha + half))
}

/// Per-eigenvalue protection flags (winding -1, boundary counts as not
/// protected), sharing one sampled curve.
pub fn protection_flags(eigenvalues: &[f64], spec: &SymbolSpec, boundary_tol: f64) -> Vec<bool> {
    let samples = symbol_samples(spec);
    eigenvalues
        .iter()
        .map(|lambda| {
            winding_of_samples(&samples, Complex64::new(*lambda, 0.0), boundary_tol).winding
                == Some(-1)
        })
        .collect()
}

/// Fraction of eigenvalues with winding -1; boundary-flagged values count
/// as not protected. Empty input yields 0.
pub fn protected_fraction(eigenvalues: &[f64], spec: &SymbolSpec, boundary_tol: f64) -> f64 {
    if eigenvalues.is_empty() {
        return 0.0;
    }
    let protected = protection_flags(eigenvalues, spec, boundary_tol)
        .iter()
        .filter(|p| **p)
        .count();
    protected as f64 / eigenvalues.len() as f64
}

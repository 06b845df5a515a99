//! Physical model of the resonator chain: geometry, disorder application,
//! subwavelength frequencies and spatial eigenmode reconstruction.

use crate::error::{Error, Result};
use crate::rng::StreamRng;

/// A chain of `N` disjoint identical resonators of length `ell`, separated
/// by the gaps in `spacings`, with a per-resonator gauge potential and
/// high-contrast material parameters. Lengths are dimensionless.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainConfig {
    ell: f64,
    spacings: Vec<f64>,
    gammas: Vec<f64>,
    v_b: f64,
    delta: f64,
}

impl ChainConfig {
    pub fn new(
        ell: f64,
        spacings: Vec<f64>,
        gammas: Vec<f64>,
        v_b: f64,
        delta: f64,
    ) -> Result<Self> {
        let n = gammas.len();
        if n < 2 {
            return Err(Error::invalid(format!("need at least 2 resonators, got {n}")));
        }
        if spacings.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                left: spacings.len(),
                right: n - 1,
            });
        }
        if !(ell > 0.0) {
            return Err(Error::invalid(format!("resonator length must be > 0, got {ell}")));
        }
        if let Some((i, &s)) = spacings.iter().enumerate().find(|(_, s)| !(**s > 0.0)) {
            return Err(Error::invalid(format!("spacing {i} must be > 0, got {s}")));
        }
        if gammas.iter().any(|g| !g.is_finite()) {
            return Err(Error::invalid("gauge potentials must be finite"));
        }
        if !(v_b > 0.0) || !(delta > 0.0) {
            return Err(Error::invalid(format!(
                "wave speed and contrast must be > 0, got v_b = {v_b}, delta = {delta}"
            )));
        }
        Ok(ChainConfig {
            ell,
            spacings,
            gammas,
            v_b,
            delta,
        })
    }

    /// Equally spaced identical resonators with a uniform gauge potential.
    /// Material parameters default to `v_b = 1`, `delta = 1e-3`; override
    /// with [`ChainConfig::with_contrast`].
    pub fn uniform(n: usize, ell: f64, s: f64, gamma: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("need at least 2 resonators, got {n}")));
        }
        if !(s > 0.0) {
            return Err(Error::invalid(format!("spacing must be > 0, got {s}")));
        }
        ChainConfig::new(ell, vec![s; n - 1], vec![gamma; n], 1.0, 1e-3)
    }

    pub fn with_contrast(mut self, v_b: f64, delta: f64) -> Result<Self> {
        if !(v_b > 0.0) || !(delta > 0.0) {
            return Err(Error::invalid(format!(
                "wave speed and contrast must be > 0, got v_b = {v_b}, delta = {delta}"
            )));
        }
        self.v_b = v_b;
        self.delta = delta;
        Ok(self)
    }

    /// Number of resonators.
    pub fn n(&self) -> usize {
        self.gammas.len()
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn v_b(&self) -> f64 {
        self.v_b
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn min_spacing(&self) -> f64 {
        self.spacings.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Replace each spacing by `s_i + u_i` with `u_i` uniform on
    /// `[-eps, eps]`, drawn from the stream keyed by `(seed, "spacing", i)`.
    /// Fails if `eps` could close a gap.
    pub fn with_spacing_disorder(&self, eps: f64, seed: u64) -> Result<Self> {
        if !(eps >= 0.0) {
            return Err(Error::invalid(format!("disorder strength must be >= 0, got {eps}")));
        }
        if eps >= self.min_spacing() {
            return Err(Error::invalid(format!(
                "spacing disorder {eps} >= smallest gap {}; resonators could overlap",
                self.min_spacing()
            )));
        }
        let spacings = self
            .spacings
            .iter()
            .enumerate()
            .map(|(i, &s)| s + StreamRng::new(seed, "spacing", i as u64).next_symmetric(eps))
            .collect();
        Ok(ChainConfig {
            spacings,
            ..self.clone()
        })
    }

    /// Replace each gauge potential by `gamma_i + u_i` with `u_i` uniform on
    /// `[-eps, eps]`. Sign flips are allowed, so there is no upper limit on
    /// `eps`.
    pub fn with_gauge_disorder(&self, eps: f64, seed: u64) -> Result<Self> {
        if !(eps >= 0.0) {
            return Err(Error::invalid(format!("disorder strength must be >= 0, got {eps}")));
        }
        let gammas = self
            .gammas
            .iter()
            .enumerate()
            .map(|(i, &g)| g + StreamRng::new(seed, "gauge", i as u64).next_symmetric(eps))
            .collect();
        Ok(ChainConfig {
            gammas,
            ..self.clone()
        })
    }
}

/// Leading-order subwavelength frequency `v_b * sqrt(delta * lambda)`.
pub fn subwavelength_frequency(lambda: f64, v_b: f64, delta: f64) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::invalid(format!(
            "eigenvalue must be nonnegative, got {lambda}"
        )));
    }
    if !(v_b > 0.0) || !(delta > 0.0) {
        return Err(Error::invalid(format!(
            "wave speed and contrast must be > 0, got v_b = {v_b}, delta = {delta}"
        )));
    }
    Ok(v_b * (delta * lambda).sqrt())
}

/// A sampled spatial mode: `values[i]` at abscissa `grid[i]`.
#[derive(Clone, Debug)]
pub struct ModeProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl ModeProfile {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Reconstruct `u(x) = sum_j coeffs[j] V_j(x)` where `V_j` is 1 on resonator
/// `j`, ramps linearly to 0 across each neighbouring gap and vanishes
/// elsewhere. The grid covers one extra gap length on each side of the chain
/// and samples every resonator, gap and flank uniformly with
/// `samples_per_segment` points.
pub fn mode_profile(
    chain: &ChainConfig,
    coeffs: &[f64],
    samples_per_segment: usize,
) -> Result<ModeProfile> {
    let n = chain.n();
    if coeffs.len() != n {
        return Err(Error::DimensionMismatch {
            left: coeffs.len(),
            right: n,
        });
    }
    if samples_per_segment == 0 {
        return Err(Error::invalid("samples_per_segment must be positive"));
    }

    // Segment list: left flank, then resonator/gap alternation, right flank.
    // u is affine on each segment, so it is enough to know the endpoint values.
    let left_flank = chain.spacings()[0];
    let right_flank = chain.spacings()[n - 2];
    let mut segments: Vec<(f64, f64, f64)> = Vec::with_capacity(2 * n + 1); // (length, u_start, u_end)
    segments.push((left_flank, 0.0, coeffs[0]));
    for i in 0..n {
        segments.push((chain.ell(), coeffs[i], coeffs[i]));
        if i + 1 < n {
            segments.push((chain.spacings()[i], coeffs[i], coeffs[i + 1]));
        }
    }
    segments.push((right_flank, coeffs[n - 1], 0.0));

    let m = samples_per_segment;
    let mut grid = Vec::with_capacity(segments.len() * m + 1);
    let mut values = Vec::with_capacity(segments.len() * m + 1);
    let mut x0 = -left_flank; // chain coordinates start at x_1^L = 0
    for &(len, u0, u1) in &segments {
        for t in 0..m {
            let frac = t as f64 / m as f64;
            grid.push(x0 + frac * len);
            values.push(u0 + frac * (u1 - u0));
        }
        x0 += len;
    }
    grid.push(x0);
    values.push(0.0);

    Ok(ModeProfile { grid, values })
}

//! Stability constants and certificates for perturbed corner-corrected
//! Toeplitz matrices: the C1/C2/C3 constants, the characteristic roots of
//! the error recurrence, the per-mode decay condition, and eigenvalue
//! deviation checks against observed spectra.

use serde::Serialize;

use crate::capmat::{toeplitz_params_of, TriMatrix};
use crate::error::{Error, Result};
use crate::spectra::{eigenvalues_sturm, symmetrize};

/// Magnitudes `eta <= beta` of the off-diagonal bands, a perturbation level
/// `eps < beta`, and the matrix size.
#[derive(Clone, Copy, Debug)]
pub struct BoundInputs {
    eta: f64,
    beta: f64,
    eps: f64,
    n: usize,
}

impl BoundInputs {
    pub fn new(eta: f64, beta: f64, eps: f64, n: usize) -> Result<Self> {
        if !(eta > 0.0) || !(beta > 0.0) {
            return Err(Error::invalid(format!(
                "band magnitudes must be positive, got eta = {eta}, beta = {beta}"
            )));
        }
        if eta > beta {
            return Err(Error::invalid(format!(
                "need eta <= beta (skin-effect orientation), got eta = {eta} > beta = {beta}"
            )));
        }
        if !(eps >= 0.0) {
            return Err(Error::invalid(format!("perturbation level must be >= 0, got {eps}")));
        }
        if eps >= beta {
            return Err(Error::invalid(format!(
                "perturbation level {eps} must stay below beta = {beta}"
            )));
        }
        if n < 2 {
            return Err(Error::invalid(format!("need n >= 2, got {n}")));
        }
        Ok(BoundInputs { eta, beta, eps, n })
    }

    /// Off-diagonal magnitudes of a corner-Toeplitz matrix, smaller first.
    pub fn from_matrix(t: &TriMatrix, eps: f64) -> Result<Self> {
        let params = toeplitz_params_of(t, 1e-9 * t.max_abs_entry().max(1.0))?;
        let (lo, hi) = ordered_magnitudes(&params.eta, &params.beta);
        BoundInputs::new(lo, hi, eps, t.n())
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `s = sqrt(eta/beta)`.
    pub fn decay_factor(&self) -> f64 {
        (self.eta / self.beta).sqrt()
    }

    fn sqrt_prod(&self) -> f64 {
        (self.eta * self.beta).sqrt()
    }

    fn cos_term(&self, k: usize) -> f64 {
        ((k - 1) as f64 * std::f64::consts::PI / self.n as f64).cos().abs()
    }

    /// `sqrt(eta/beta) * beta(eta+eps) / ((beta-eps) eta)`, the geometric
    /// prefactor of the error envelope.
    pub fn growth_prefactor(&self) -> f64 {
        self.decay_factor() * self.beta * (self.eta + self.eps) / ((self.beta - self.eps) * self.eta)
    }
}

fn ordered_magnitudes(eta: &f64, beta: &f64) -> (f64, f64) {
    let (a, b) = (eta.abs(), beta.abs());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn c1_raw(eta: f64, beta: f64, eps: f64) -> f64 {
    (beta + eta + eps) / (beta * eta).sqrt() + 1.0
}

/// Eigenvalue stability constant `(beta + eta + eps)/sqrt(beta eta) + 1`.
pub fn c1(inputs: &BoundInputs) -> f64 {
    c1_raw(inputs.eta, inputs.beta, inputs.eps)
}

/// `C2 = (beta + eta + eps)/(2 sqrt(beta eta)) + 1` and
/// `C3 = (1 + 2 C2 s + s^2)(1 + s)` with `s = sqrt(eta/beta)`.
pub fn c2_c3(inputs: &BoundInputs) -> (f64, f64) {
    let c2 = (inputs.beta + inputs.eta + inputs.eps) / (2.0 * inputs.sqrt_prod()) + 1.0;
    let s = inputs.decay_factor();
    let c3 = (1.0 + 2.0 * c2 * s + s * s) * (1.0 + s);
    (c2, c3)
}

fn check_mode_index(k: usize, inputs: &BoundInputs) -> Result<()> {
    if k < 2 || k > inputs.n {
        return Err(Error::invalid(format!(
            "mode index must satisfy 2 <= k <= {}, got {k}",
            inputs.n
        )));
    }
    Ok(())
}

/// Roots `r_{k,+/-} = c +/- sqrt(c^2 + 1)` of the error recurrence, with
/// `c = |cos((k-1)pi/n)| + C2 eps / sqrt(eta beta)`.
pub fn characteristic_roots(k: usize, inputs: &BoundInputs) -> Result<(f64, f64)> {
    check_mode_index(k, inputs)?;
    let (c2, _) = c2_c3(inputs);
    let c = inputs.cos_term(k) + c2 * inputs.eps / inputs.sqrt_prod();
    let root = (c * c + 1.0).sqrt();
    Ok((c + root, c - root))
}

/// Contraction factor `rho = growth_prefactor * r_{k,+}`; the perturbed
/// eigenvector keeps its exponential decay when `rho < 1`.
pub fn decay_condition(k: usize, inputs: &BoundInputs) -> Result<(f64, bool)> {
    let (r_plus, _) = characteristic_roots(k, inputs)?;
    let rho = inputs.growth_prefactor() * r_plus;
    Ok((rho, rho < 1.0))
}

const BOUND_OVERFLOW_LIMIT: f64 = 1e300;

/// Envelope bound `zeta_{k,j} = growth_prefactor^j * M_j`, with `M_j` from
/// the three-term recurrence
/// `M_{j+1} = 2(|cos| + C2 eps/sqrt(eta beta)) M_j + M_{j-1} + C3`.
pub fn zeta_bound(k: usize, j: usize, inputs: &BoundInputs) -> Result<f64> {
    check_mode_index(k, inputs)?;
    if j > inputs.n - 1 {
        return Err(Error::invalid(format!(
            "site offset must satisfy 0 <= j <= {}, got {j}",
            inputs.n - 1
        )));
    }
    let m_j = bound_recurrence(k, j, inputs)?;
    let zeta = inputs.growth_prefactor().powi(j as i32) * m_j;
    if !zeta.is_finite() || zeta > BOUND_OVERFLOW_LIMIT {
        return Err(Error::BoundOverflow { j });
    }
    Ok(zeta)
}

/// `M_j` evaluated by direct recurrence.
fn bound_recurrence(k: usize, j: usize, inputs: &BoundInputs) -> Result<f64> {
    let (c2, c3) = c2_c3(inputs);
    let s = inputs.decay_factor();
    let cos = inputs.cos_term(k);
    let drift = c2 * inputs.eps / inputs.sqrt_prod();

    let m0 = 1.0;
    if j == 0 {
        return Ok(m0);
    }
    let m1 = s * (1.0 + s) * (2.0 * c2 + s) + s + 2.0 * cos + 2.0 * drift;
    if j == 1 {
        return Ok(m1);
    }
    let mut prev = m0;
    let mut cur = m1;
    for step in 2..=j {
        let next = 2.0 * (cos + drift) * cur + prev + c3;
        if !next.is_finite() || next > BOUND_OVERFLOW_LIMIT {
            return Err(Error::BoundOverflow { j: step });
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Eigenvalue-stability fragment: observed deviation vs the C1 bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EigenvalueCheck {
    pub effective_eps: f64,
    pub max_deviation: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Compare the sorted spectra of an unperturbed corner-Toeplitz matrix and a
/// perturbation of it against the `C1 * eps` bound. The effective `eps` is
/// the realised maximum entrywise deviation.
pub fn check_eigenvalue_stability(t: &TriMatrix, that: &TriMatrix) -> Result<EigenvalueCheck> {
    let params = toeplitz_params_of(t, 1e-9 * t.max_abs_entry().max(1.0))?;
    let effective_eps = t.max_entry_deviation(that)?;
    let (lo, hi) = ordered_magnitudes(&params.eta, &params.beta);
    let bound = c1_raw(lo, hi, effective_eps) * effective_eps;

    let spectrum = |m: &TriMatrix| -> Result<Vec<f64>> {
        let sym = symmetrize(m)?;
        let width = {
            let d = sym.sym_diag();
            let maxd = d.iter().fold(f64::NEG_INFINITY, |m, x| m.max(*x));
            let mind = d.iter().fold(f64::INFINITY, |m, x| m.min(*x));
            let r = 2.0 * sym.sym_off().iter().fold(0.0f64, |m, x| m.max(x.abs()));
            (maxd - mind + 2.0 * r).max(f64::MIN_POSITIVE)
        };
        eigenvalues_sturm(&sym, 1e-13 * width)
    };
    let base = spectrum(t)?;
    let pert = spectrum(that)?;
    let max_deviation = base
        .iter()
        .zip(&pert)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    Ok(EigenvalueCheck {
        effective_eps,
        max_deviation,
        bound,
        pass: max_deviation <= bound + 1e-9,
    })
}

pub const DEFAULT_DECAY_FLOOR: f64 = 1e-13;

/// Least-squares slope of `ln|v_j|` against the site index, restricted to
/// entries above `floor_rel * ||v||_inf`. Negative slopes mean decay toward
/// larger indices.
pub fn fit_decay_rate(v: &[f64], floor_rel: f64) -> Result<f64> {
    let vmax = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if vmax == 0.0 {
        return Err(Error::DegenerateFit { surviving: 0 });
    }
    let floor = floor_rel * vmax;
    let points: Vec<(f64, f64)> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| x.abs() > floor)
        .map(|(j, x)| (j as f64, x.abs().ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::DegenerateFit {
            surviving: points.len(),
        });
    }
    let m = points.len() as f64;
    let xbar = points.iter().map(|(x, _)| x).sum::<f64>() / m;
    let ybar = points.iter().map(|(_, y)| y).sum::<f64>() / m;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in &points {
        num += (x - xbar) * (y - ybar);
        den += (x - xbar) * (x - xbar);
    }
    if den == 0.0 {
        return Err(Error::DegenerateFit {
            surviving: points.len(),
        });
    }
    Ok(num / den)
}

/// Per-mode stability record (k indexes the nonzero branch, 2..=n).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ModeStability {
    pub k: usize,
    pub r_plus: f64,
    pub r_minus: f64,
    pub rho: f64,
    pub decay_ok: bool,
}

/// Bound constants plus per-mode decay certificates and the eigenvalue
/// deviation check.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub modes: Vec<ModeStability>,
    pub effective_eps: f64,
    pub eigenvalue_max_dev: f64,
    pub eigenvalue_bound: f64,
    pub pass: bool,
}

/// Full report for a perturbation `that` of the corner-Toeplitz matrix `t`.
pub fn stability_report(t: &TriMatrix, that: &TriMatrix) -> Result<StabilityReport> {
    let check = check_eigenvalue_stability(t, that)?;
    let inputs = BoundInputs::from_matrix(t, check.effective_eps)?;
    let (c2v, c3v) = c2_c3(&inputs);
    let mut modes = Vec::with_capacity(t.n() - 1);
    for k in 2..=t.n() {
        let (r_plus, r_minus) = characteristic_roots(k, &inputs)?;
        let (rho, decay_ok) = decay_condition(k, &inputs)?;
        modes.push(ModeStability {
            k,
            r_plus,
            r_minus,
            rho,
            decay_ok,
        });
    }
    Ok(StabilityReport {
        c1: c1(&inputs),
        c2: c2v,
        c3: c3v,
        modes,
        effective_eps: check.effective_eps,
        eigenvalue_max_dev: check.max_deviation,
        eigenvalue_bound: check.bound,
        pass: check.pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capmat::{entrywise_perturb, gauge_capacitance};
    use crate::chain::ChainConfig;
    use crate::spectra::full_spectrum;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn paper_inputs(eps: f64) -> BoundInputs {
        BoundInputs::new(0.15, 3.15, eps, 50).unwrap()
    }

    #[test]
    fn c1_frozen_values() {
        assert_abs_diff_eq!(c1(&paper_inputs(0.1)), 5.9462721786824940, epsilon = 1e-13);
        assert_abs_diff_eq!(
            c1(&BoundInputs::new(1.0, 1.0, 0.0, 10).unwrap()),
            3.0,
            epsilon = 1e-15
        );
        // gamma = 1 uniform-chain magnitudes
        let eta = 0.5819767068693264;
        let beta = 1.5819767068693264;
        assert_abs_diff_eq!(
            c1(&BoundInputs::new(eta, beta, 0.0, 10).unwrap()),
            3.2552519304127616,
            epsilon = 1e-12
        );
    }

    #[test]
    fn c2_c3_frozen_values() {
        let (c2v, c3v) = c2_c3(&paper_inputs(0.1));
        assert_abs_diff_eq!(c2v, 3.4731360893412470, epsilon = 1e-13);
        assert_abs_diff_eq!(c3v, 3.1228039914501273, epsilon = 1e-13);
        let (c2s, _) = c2_c3(&paper_inputs(0.001));
        assert_abs_diff_eq!(c2s, 3.4011241855633695, epsilon = 1e-13);
        let (c2u, c3u) = c2_c3(&BoundInputs::new(1.0, 1.0, 0.0, 10).unwrap());
        assert_abs_diff_eq!(c2u, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c3u, 12.0, epsilon = 1e-15);
    }

    #[test]
    fn characteristic_roots_frozen_values() {
        // midpoint mode of an even n has cos = 0
        let inputs = BoundInputs::new(0.15, 3.15, 0.1, 50).unwrap();
        let (rp, rm) = characteristic_roots(26, &inputs).unwrap();
        assert_abs_diff_eq!(rp, 1.6256662990820546, epsilon = 1e-12);
        assert_abs_diff_eq!(rp * rm, -1.0, epsilon = 1e-12);

        // eps = 0, midpoint: c = 0 so r = +/- 1
        let clean = BoundInputs::new(0.15, 3.15, 0.0, 50).unwrap();
        let (rp0, rm0) = characteristic_roots(26, &clean).unwrap();
        assert_abs_diff_eq!(rp0, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rm0, -1.0, epsilon = 1e-15);

        // eps = 0, k = 2, large n: r+ -> 1 + sqrt(2)
        let big = BoundInputs::new(0.15, 3.15, 0.0, 100_000).unwrap();
        let (rp1, _) = characteristic_roots(2, &big).unwrap();
        assert_abs_diff_eq!(rp1, 1.0 + 2f64.sqrt(), epsilon = 1e-8);
    }

    #[test]
    fn decay_condition_frozen_values() {
        let (rho_small, ok_small) =
            decay_condition(2, &BoundInputs::new(0.15, 3.15, 0.001, 50).unwrap()).unwrap();
        assert_abs_diff_eq!(rho_small, 0.53162136843171416, epsilon = 1e-12);
        assert!(ok_small);

        let (rho_big, ok_big) =
            decay_condition(2, &BoundInputs::new(0.15, 3.15, 0.1, 50).unwrap()).unwrap();
        assert_abs_diff_eq!(rho_big, 1.2428586667456364, epsilon = 1e-12);
        assert!(!ok_big);
    }

    #[test]
    fn unperturbed_decay_holds_below_golden_ratio_threshold() {
        // with eps = 0, rho = s * r_+ <= s (1 + sqrt(2)) < 1 iff s < sqrt(2) - 1
        let inputs = BoundInputs::new(0.15, 3.15, 0.0, 50).unwrap();
        assert!(inputs.decay_factor() < 2f64.sqrt() - 1.0);
        for k in 2..=50 {
            let (_, ok) = decay_condition(k, &inputs).unwrap();
            assert!(ok, "mode {k} unexpectedly fails at eps = 0");
        }
    }

    #[test]
    fn zeta_bound_initial_values() {
        let inputs = BoundInputs::new(0.15, 3.15, 0.1, 50).unwrap();
        assert_abs_diff_eq!(zeta_bound(26, 0, &inputs).unwrap(), 1.0, epsilon = 1e-15);
        // M1 at the cos = 0 midpoint, frozen from exact arithmetic
        let m1 = zeta_bound(26, 1, &inputs).unwrap() / inputs.growth_prefactor();
        assert_abs_diff_eq!(m1, 3.1333378980081700, epsilon = 1e-12);
        assert_abs_diff_eq!(
            inputs.growth_prefactor(),
            0.37562095860293771,
            epsilon = 1e-13
        );
    }

    #[test]
    fn zeta_recurrence_matches_root_closed_form() {
        let inputs = BoundInputs::new(0.15, 3.15, 0.1, 60).unwrap();
        for k in [2usize, 15, 31, 60] {
            let (c2v, c3v) = c2_c3(&inputs);
            let cos = ((k - 1) as f64 * std::f64::consts::PI / 60.0).cos().abs();
            let c = cos + c2v * inputs.eps() / (0.15f64 * 3.15).sqrt();
            let (rp, rm) = characteristic_roots(k, &inputs).unwrap();
            let zeta_c = c3v / (2.0 * c);
            let a_plus = ((zeta_bound(k, 1, &inputs).unwrap() / inputs.growth_prefactor() + zeta_c)
                - (1.0 + zeta_c) * rm)
                / (rp - rm);
            let a_minus = (1.0 + zeta_c) - a_plus;
            for j in 0..=50usize {
                let direct = zeta_bound(k, j, &inputs).unwrap() / inputs.growth_prefactor().powi(j as i32);
                let closed = a_plus * rp.powi(j as i32) + a_minus * rm.powi(j as i32) - zeta_c;
                assert!(
                    (direct - closed).abs() <= 1e-8 * direct.abs().max(1.0),
                    "k={k} j={j}: {direct} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn zeta_overflow_is_reported() {
        // force a wildly growing recurrence with eps close to beta
        let inputs = BoundInputs::new(0.01, 1.0, 0.99, 400).unwrap();
        let mut saw_overflow = false;
        for j in 0..400 {
            match zeta_bound(2, j, &inputs) {
                Ok(_) => {}
                Err(Error::BoundOverflow { .. }) => {
                    saw_overflow = true;
                    break;
                }
                Err(other) => panic!("unexpected error {other:?}"),
            }
        }
        assert!(saw_overflow);
    }

    #[test]
    fn zeta_is_monotone_in_eps_and_in_j_when_expanding() {
        let base = BoundInputs::new(0.15, 3.15, 0.0, 30).unwrap();
        let mut prev = 0.0;
        for (i, eps) in [0.0, 0.01, 0.05, 0.1, 0.5].iter().enumerate() {
            let z = zeta_bound(5, 8, &BoundInputs::new(0.15, 3.15, *eps, 30).unwrap()).unwrap();
            if i > 0 {
                assert!(z >= prev);
            }
            prev = z;
        }
        // rho >= 1 case: zeta grows with j
        let grow = BoundInputs::new(0.15, 3.15, 0.12, 30).unwrap();
        let (rho, ok) = decay_condition(2, &grow).unwrap();
        assert!(rho >= 1.0 && !ok);
        let mut last = zeta_bound(2, 0, &grow).unwrap();
        for j in 1..20 {
            let z = zeta_bound(2, j, &grow).unwrap();
            assert!(z >= last);
            last = z;
        }
        let _ = base;
    }

    #[test]
    fn bound_inputs_validation() {
        assert!(BoundInputs::new(0.0, 1.0, 0.0, 5).is_err());
        assert!(BoundInputs::new(2.0, 1.0, 0.0, 5).is_err()); // eta > beta
        assert!(BoundInputs::new(0.5, 1.0, 1.0, 5).is_err()); // eps >= beta
        assert!(BoundInputs::new(0.5, 1.0, -0.1, 5).is_err());
        assert!(BoundInputs::new(0.5, 1.0, 0.1, 1).is_err());
    }

    #[test]
    fn identical_matrices_pass_with_zero_deviation() {
        let chain = ChainConfig::uniform(20, 1.0, 1.0, 3.0).unwrap();
        let t = gauge_capacitance(&chain).unwrap();
        let check = check_eigenvalue_stability(&t, &t).unwrap();
        assert_eq!(check.effective_eps, 0.0);
        assert_eq!(check.max_deviation, 0.0);
        assert!(check.pass);
    }

    #[test]
    fn perturbed_capmat_passes_c1_certificate() {
        let chain = ChainConfig::uniform(50, 1.0, 1.0, 3.0).unwrap();
        let t = gauge_capacitance(&chain).unwrap();
        for seed in 0..50 {
            let hat = entrywise_perturb(&t, 1e-3, seed).unwrap();
            let check = check_eigenvalue_stability(&t, &hat.matrix).unwrap();
            assert!(check.pass, "seed {seed}: {check:?}");
            assert!(check.effective_eps <= 1e-3);
        }
    }

    #[test]
    fn spacing_disorder_keeps_exact_kernel() {
        // structured builders preserve zero row sums, so lambda_1 stays 0
        let base = ChainConfig::uniform(30, 1.0, 1.0, 1.0).unwrap();
        for seed in 0..10 {
            let chain = base.with_spacing_disorder(0.3, seed).unwrap();
            let t = gauge_capacitance(&chain).unwrap();
            let sd = full_spectrum(&t).unwrap();
            assert!(sd.eigenvalues()[0].abs() <= 1e-10);
        }
    }

    #[test]
    fn report_covers_every_mode() {
        let chain = ChainConfig::uniform(12, 1.0, 1.0, 3.0).unwrap();
        let t = gauge_capacitance(&chain).unwrap();
        let hat = entrywise_perturb(&t, 1e-4, 3).unwrap().matrix;
        let report = stability_report(&t, &hat).unwrap();
        assert_eq!(report.modes.len(), 11);
        assert!(report.pass);
        assert!(report.modes.iter().all(|m| m.decay_ok));
        assert!(report.c1 > 0.0 && report.c2 > 0.0 && report.c3 > 0.0);
    }

    #[test]
    fn decay_rate_of_exact_geometric_vector() {
        let v: Vec<f64> = (0..40).map(|j| 3.0 * 0.5f64.powi(j)).collect();
        let slope = fit_decay_rate(&v, DEFAULT_DECAY_FLOOR).unwrap();
        assert_abs_diff_eq!(slope, 0.5f64.ln(), epsilon = 1e-10);
    }

    #[test]
    fn decay_rate_of_constant_vector_is_zero() {
        let v = vec![1.0; 25];
        assert_abs_diff_eq!(
            fit_decay_rate(&v, DEFAULT_DECAY_FLOOR).unwrap(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn decay_rate_degenerate_cases() {
        assert!(matches!(
            fit_decay_rate(&[0.0, 0.0, 0.0], DEFAULT_DECAY_FLOOR),
            Err(Error::DegenerateFit { surviving: 0 })
        ));
        assert!(matches!(
            fit_decay_rate(&[0.0, 1.0, 0.0, 0.0], DEFAULT_DECAY_FLOOR),
            Err(Error::DegenerateFit { surviving: 1 })
        ));
    }

    #[test]
    fn large_perturbations_break_decay_in_most_realisations() {
        // at eps = 0.1 the decay condition fails for some modes and, in a
        // majority of seeds, at least one eigenvector really does decay
        // more slowly than the unperturbed band rate
        let chain = ChainConfig::uniform(50, 1.0, 1.0, 3.0).unwrap();
        let t = gauge_capacitance(&chain).unwrap();
        let mut seeds_with_shallow_mode = 0;
        for seed in 0..20 {
            let hat = entrywise_perturb(&t, 0.1, seed).unwrap();
            let inputs = BoundInputs::from_matrix(&t, hat.effective_eps).unwrap();
            assert!((2..=50).any(|k| !decay_condition(k, &inputs).unwrap().1));
            let sd = full_spectrum(&hat.matrix).unwrap();
            let shallow = (1..50).any(|k| {
                fit_decay_rate(sd.eigenvector(k), DEFAULT_DECAY_FLOOR)
                    .map(|slope| slope > -1.5 + 0.2)
                    .unwrap_or(false)
            });
            if shallow {
                seeds_with_shallow_mode += 1;
            }
        }
        assert!(
            seeds_with_shallow_mode > 10,
            "only {seeds_with_shallow_mode} of 20 seeds had a slow mode"
        );
    }

    #[test]
    fn unperturbed_gamma_three_eigenvectors_decay_at_band_rate() {
        let chain = ChainConfig::uniform(50, 1.0, 1.0, 3.0).unwrap();
        let t = gauge_capacitance(&chain).unwrap();
        let sd = full_spectrum(&t).unwrap();
        // -ln sqrt(beta/eta) = -gamma/2 = -1.5
        for k in 1..50 {
            let slope = fit_decay_rate(sd.eigenvector(k), DEFAULT_DECAY_FLOOR).unwrap();
            assert!(slope <= -1.5 + 0.15, "mode {k} decays too slowly: {slope}");
        }
    }

    proptest! {
        #[test]
        fn roots_satisfy_vieta(
            eta in 0.05f64..2.0,
            spread in 1.0f64..4.0,
            eps_frac in 0.0f64..0.9,
            k in 2usize..30,
        ) {
            let beta = eta * spread;
            let eps = eps_frac * beta * 0.99;
            let inputs = BoundInputs::new(eta, beta, eps, 30).unwrap();
            let (rp, rm) = characteristic_roots(k, &inputs).unwrap();
            prop_assert!((rp * rm + 1.0).abs() <= 1e-10);
            prop_assert!(rp > 0.0 && rm < 0.0);
            let (c2v, _) = c2_c3(&inputs);
            let c = ((k - 1) as f64 * std::f64::consts::PI / 30.0).cos().abs()
                + c2v * eps / (eta * beta).sqrt();
            prop_assert!((rp + rm - 2.0 * c).abs() <= 1e-10 * c.max(1.0));
        }
    }
}

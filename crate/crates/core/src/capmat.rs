//! Gauge capacitance matrices and the perturbed tridiagonal families built
//! from them.

use serde::Serialize;

use crate::chain::ChainConfig;
use crate::error::{Error, Result};
use crate::rng::StreamRng;

/// Real tridiagonal matrix stored as three diagonals. `sub[i]` is the entry
/// at `(i+1, i)` and `sup[i]` the entry at `(i, i+1)` (0-based).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriMatrix {
    n: usize,
    diag: Vec<f64>,
    sub: Vec<f64>,
    sup: Vec<f64>,
}

impl TriMatrix {
    pub fn new(diag: Vec<f64>, sub: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::invalid("matrix must have at least one row"));
        }
        if sub.len() != n - 1 || sup.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                left: sub.len().max(sup.len()),
                right: n - 1,
            });
        }
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if !finite(&diag) || !finite(&sub) || !finite(&sup) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(TriMatrix { n, diag, sub, sup })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    pub fn sup(&self) -> &[f64] {
        &self.sup
    }

    pub fn max_abs_entry(&self) -> f64 {
        let fold = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        fold(&self.diag).max(fold(&self.sub)).max(fold(&self.sup))
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.sub
            .iter()
            .zip(&self.sup)
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// `y = T x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.sub[i - 1] * x[i - 1];
            }
            if i + 1 < self.n {
                acc += self.sup[i] * x[i + 1];
            }
            y[i] = acc;
        }
        y
    }

    /// `||T v - lambda v||_2`.
    pub fn residual_norm(&self, lambda: f64, v: &[f64]) -> f64 {
        let y = self.matvec(v);
        y.iter()
            .zip(v)
            .map(|(yi, vi)| {
                let r = yi - lambda * vi;
                r * r
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_row_sum_deviation(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                let mut s = self.diag[i];
                if i > 0 {
                    s += self.sub[i - 1];
                }
                if i + 1 < self.n {
                    s += self.sup[i];
                }
                s.abs()
            })
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation over the three bands.
    pub fn max_entry_deviation(&self, other: &TriMatrix) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let band = |a: &[f64], b: &[f64]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max)
        };
        Ok(band(&self.diag, &other.diag)
            .max(band(&self.sub, &other.sub))
            .max(band(&self.sup, &other.sup)))
    }
}

/// Coefficients of a tridiagonal Toeplitz matrix with corner corrections
/// `a` (first diagonal entry) and `b` (last diagonal entry). The subdiagonal
/// is `eta`, the superdiagonal `beta`, and `eta * beta > 0` always.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ToeplitzParams {
    pub alpha: f64,
    pub eta: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
}

impl ToeplitzParams {
    pub fn new(alpha: f64, eta: f64, beta: f64, a: f64, b: f64) -> Result<Self> {
        if !(eta * beta > 0.0) {
            return Err(Error::invalid(format!(
                "off-diagonal product must be positive, got eta = {eta}, beta = {beta}"
            )));
        }
        if ![alpha, eta, beta, a, b].iter().all(|x| x.is_finite()) {
            return Err(Error::invalid("Toeplitz coefficients must be finite"));
        }
        Ok(ToeplitzParams { alpha, eta, beta, a, b })
    }

    /// `sqrt(eta * beta)`, the off-diagonal of the symmetrized matrix.
    pub fn symmetric_off(&self) -> f64 {
        (self.eta * self.beta).sqrt()
    }

    /// `sqrt(eta / beta)`, the per-site decay factor of the skin modes.
    pub fn decay_factor(&self) -> f64 {
        (self.eta / self.beta).sqrt()
    }
}

/// Per-resonator coupling factors `gamma/(e^{gamma ell} - 1)` and
/// `gamma e^{gamma ell}/(e^{gamma ell} - 1)`. Below `|gamma ell| = 1e-8` the
/// first-order Taylor limits are used; the exact identity
/// `f_plus = gamma + f_minus` holds in both branches.
fn coupling_factors(gamma: f64, ell: f64) -> (f64, f64) {
    let x = gamma * ell;
    let f_minus = if x.abs() < 1e-8 {
        (1.0 - 0.5 * x) / ell
    } else {
        gamma / x.exp_m1()
    };
    (f_minus, f_minus + gamma)
}

/// Assemble the gauge capacitance matrix of a chain. Row `i` couples through
/// its own gauge factor to both neighbouring gaps; the diagonal is the
/// negated sum of the off-diagonal entries, so every row sums to zero
/// exactly (in floating point) and `1` is always in the kernel.
pub fn gauge_capacitance(chain: &ChainConfig) -> Result<TriMatrix> {
    let n = chain.n();
    let ell = chain.ell();
    for (i, &g) in chain.gammas().iter().enumerate() {
        let x = (g * ell).abs();
        if x >= 710.0 {
            return Err(Error::GaugeOverflow { index: i, value: x });
        }
    }
    let factors: Vec<(f64, f64)> = chain
        .gammas()
        .iter()
        .map(|&g| coupling_factors(g, ell))
        .collect();

    let mut sub = Vec::with_capacity(n - 1);
    let mut sup = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let s = chain.spacings()[i];
        sup.push(-factors[i].1 / s); // (i, i+1): row i couples rightwards
        sub.push(-factors[i + 1].0 / s); // (i+1, i): row i+1 couples leftwards
    }
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let left = if i > 0 { sub[i - 1] } else { 0.0 };
        let right = if i + 1 < n { sup[i] } else { 0.0 };
        diag.push(-left - right);
    }
    TriMatrix::new(diag, sub, sup)
}

/// Tridiagonal Toeplitz matrix with corner corrections:
/// `diag = [alpha+a, alpha, ..., alpha, alpha+b]`, constant off-diagonals.
pub fn corner_toeplitz(params: &ToeplitzParams, n: usize) -> Result<TriMatrix> {
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    if !(params.eta * params.beta > 0.0) {
        return Err(Error::invalid(format!(
            "off-diagonal product must be positive, got eta = {}, beta = {}",
            params.eta, params.beta
        )));
    }
    let mut diag = vec![params.alpha; n];
    diag[0] += params.a;
    diag[n - 1] += params.b;
    TriMatrix::new(diag, vec![params.eta; n - 1], vec![params.beta; n - 1])
}

/// Result of an entrywise perturbation: the realised maximum draw is the
/// trial's effective perturbation level, and `sign_warning` is raised when
/// `eps` is large enough that some `sub*sup` product could turn non-positive.
#[derive(Clone, Debug)]
pub struct Perturbed {
    pub matrix: TriMatrix,
    pub effective_eps: f64,
    pub sign_warning: bool,
}

/// Shift every tridiagonal entry by an independent uniform draw on
/// `[-eps, eps]`.
pub fn entrywise_perturb(t: &TriMatrix, eps: f64, seed: u64) -> Result<Perturbed> {
    if !(eps >= 0.0) {
        return Err(Error::invalid(format!("perturbation level must be >= 0, got {eps}")));
    }
    let min_off = t
        .sub()
        .iter()
        .chain(t.sup())
        .map(|x| x.abs())
        .fold(f64::INFINITY, f64::min);
    let sign_warning = t.n() > 1 && eps >= min_off;

    let mut rng = StreamRng::new(seed, "entrywise", 0);
    let mut effective = 0.0f64;
    let mut draw = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .map(|x| {
                let u = rng.next_symmetric(eps);
                effective = effective.max(u.abs());
                x + u
            })
            .collect()
    };
    let diag = draw(t.diag());
    let sub = draw(t.sub());
    let sup = draw(t.sup());
    Ok(Perturbed {
        matrix: TriMatrix::new(diag, sub, sup)?,
        effective_eps: effective,
        sign_warning,
    })
}

/// Recover `(alpha, eta, beta, a, b)` from a matrix that is claimed to be
/// Toeplitz with corner corrections. Interior diagonal entries and each
/// off-diagonal band must agree within `tol`; the first offending entry is
/// reported otherwise.
pub fn toeplitz_params_of(t: &TriMatrix, tol: f64) -> Result<ToeplitzParams> {
    let n = t.n();
    if n < 3 {
        return Err(Error::invalid(format!("need n >= 3 to identify corners, got {n}")));
    }
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!("tolerance must be >= 0, got {tol}")));
    }
    let alpha = t.diag()[1];
    for (i, &d) in t.diag().iter().enumerate().take(n - 1).skip(1) {
        if (d - alpha).abs() > tol {
            return Err(Error::NotToeplitz {
                band: "diag",
                index: i,
                value: d,
                expected: alpha,
                tol,
            });
        }
    }
    let eta = t.sub()[0];
    for (i, &x) in t.sub().iter().enumerate() {
        if (x - eta).abs() > tol {
            return Err(Error::NotToeplitz {
                band: "sub",
                index: i,
                value: x,
                expected: eta,
                tol,
            });
        }
    }
    let beta = t.sup()[0];
    for (i, &x) in t.sup().iter().enumerate() {
        if (x - beta).abs() > tol {
            return Err(Error::NotToeplitz {
                band: "sup",
                index: i,
                value: x,
                expected: beta,
                tol,
            });
        }
    }
    ToeplitzParams::new(alpha, eta, beta, t.diag()[0] - alpha, t.diag()[n - 1] - alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn uniform_capmat(n: usize, gamma: f64) -> TriMatrix {
        let chain = ChainConfig::uniform(n, 1.0, 1.0, gamma).unwrap();
        gauge_capacitance(&chain).unwrap()
    }

    #[test]
    fn gamma_three_entries_match_paper_parameters() {
        let t = uniform_capmat(50, 3.0);
        // 3/(e^3-1) and 3e^3/(e^3-1)
        for &x in t.sub() {
            assert_abs_diff_eq!(x, -0.15718708947376786, epsilon = 1e-14);
        }
        for &x in t.sup() {
            assert_abs_diff_eq!(x, -3.1571870894737679, epsilon = 1e-14);
        }
        for &d in &t.diag()[1..49] {
            assert_abs_diff_eq!(d, 3.3143741789475357, epsilon = 1e-13); // 3 coth(1.5)
        }
    }

    #[test]
    fn gamma_one_diagonal_entries() {
        let t = uniform_capmat(10, 1.0);
        assert_abs_diff_eq!(t.diag()[0], 1.5819767068693264, epsilon = 1e-14); // 1/(1-e^-1)
        assert_abs_diff_eq!(t.diag()[5], 2.1639534137386528, epsilon = 1e-14); // coth(1/2)
        assert_abs_diff_eq!(t.diag()[9], 0.5819767068693264, epsilon = 1e-14); // 1/(e-1)
    }

    #[test]
    fn small_gamma_limit_is_hermitian_laplacian() {
        let t = uniform_capmat(6, 1e-12);
        for &x in t.sub().iter().chain(t.sup()) {
            assert_abs_diff_eq!(x, -1.0, epsilon = 1e-8);
        }
        assert_abs_diff_eq!(t.diag()[0], 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t.diag()[3], 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t.diag()[5], 1.0, epsilon = 1e-8);
    }

    #[test]
    fn small_gamma_branch_is_continuous() {
        // compare the Taylor branch at gamma = 1e-9 with its analytic limit
        let t = uniform_capmat(4, 1e-9);
        let limit = uniform_capmat(4, 0.0);
        for (a, b) in t.sub().iter().zip(limit.sub()) {
            assert!((a - b).abs() / b.abs() < 1e-6);
        }
        for (a, b) in t.diag().iter().zip(limit.diag()) {
            assert!((a - b).abs() / b.abs() < 1e-6);
        }
    }

    #[test]
    fn rows_sum_to_zero_for_disordered_chains() {
        let chain = ChainConfig::uniform(40, 1.0, 1.0, 1.0)
            .unwrap()
            .with_spacing_disorder(0.3, 5)
            .unwrap()
            .with_gauge_disorder(2.5, 6) // mixed-sign gammas
            .unwrap();
        let t = gauge_capacitance(&chain).unwrap();
        assert!(t.max_abs_row_sum_deviation() <= 1e-12 * t.max_abs_entry());
        // the off-diagonal products stay positive even with sign-mixed gammas
        for (a, b) in t.sub().iter().zip(t.sup()) {
            assert!(a * b > 0.0);
        }
    }

    #[test]
    fn corner_identities_on_uniform_chains() {
        for gamma in [0.5, 1.0, 3.0, -2.0] {
            let t = uniform_capmat(12, gamma);
            let alpha = t.diag()[1];
            assert_abs_diff_eq!(t.diag()[0] - alpha, t.sub()[0], epsilon = 1e-13); // a = eta
            assert_abs_diff_eq!(t.diag()[11] - alpha, t.sup()[0], epsilon = 1e-13); // b = beta
        }
    }

    #[test]
    fn uniform_chain_band_identities() {
        for gamma in [0.5f64, 1.0, 3.0] {
            let t = uniform_capmat(8, gamma);
            let eta = t.sub()[0];
            let beta = t.sup()[0];
            assert_abs_diff_eq!(eta / beta, (-gamma).exp(), epsilon = 1e-13);
            let expected = gamma * (gamma / 2.0).exp() / gamma.exp_m1();
            assert_abs_diff_eq!((eta * beta).sqrt(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn gauge_overflow_is_rejected() {
        let chain = ChainConfig::uniform(4, 1.0, 1.0, 720.0).unwrap();
        assert!(matches!(
            gauge_capacitance(&chain),
            Err(Error::GaugeOverflow { index: 0, .. })
        ));
    }

    #[test]
    fn corner_toeplitz_two_by_two() {
        let p = ToeplitzParams::new(2.0, -1.0, -1.0, -1.0, -1.0).unwrap();
        let t = corner_toeplitz(&p, 2).unwrap();
        assert_eq!(t.diag(), &[1.0, 1.0]);
        assert_eq!(t.sub(), &[-1.0]);
        assert_eq!(t.sup(), &[-1.0]);
    }

    #[test]
    fn corner_toeplitz_rejects_sign_violation() {
        assert!(ToeplitzParams::new(2.0, 1.0, -1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn corner_toeplitz_matches_gauge_capacitance() {
        let t = uniform_capmat(50, 3.0);
        let p = toeplitz_params_of(&t, 1e-12).unwrap();
        let rebuilt = corner_toeplitz(&p, 50).unwrap();
        assert!(t.max_entry_deviation(&rebuilt).unwrap() <= 1e-14);
        assert_abs_diff_eq!(p.a, p.eta, epsilon = 1e-13);
        assert_abs_diff_eq!(p.b, p.beta, epsilon = 1e-13);
    }

    #[test]
    fn params_recovered_from_gamma_one_chain() {
        let t = uniform_capmat(10, 1.0);
        let p = toeplitz_params_of(&t, 1e-12).unwrap();
        assert_abs_diff_eq!(p.alpha, 2.1639534137386528, epsilon = 1e-13);
        assert_abs_diff_eq!(p.eta, -0.5819767068693264, epsilon = 1e-13);
        assert_abs_diff_eq!(p.beta, -1.5819767068693264, epsilon = 1e-13);
    }

    #[test]
    fn perturbed_matrix_is_reported_non_toeplitz() {
        let p = ToeplitzParams::new(2.0, -0.5, -1.5, -0.5, -1.5).unwrap();
        let t = corner_toeplitz(&p, 10).unwrap();
        for seed in 0..5 {
            let hat = entrywise_perturb(&t, 0.01, seed).unwrap().matrix;
            assert!(matches!(
                toeplitz_params_of(&hat, 1e-6),
                Err(Error::NotToeplitz { .. })
            ));
        }
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let t = uniform_capmat(10, 3.0);
        let p = entrywise_perturb(&t, 0.0, 9).unwrap();
        assert_eq!(p.matrix, t);
        assert_eq!(p.effective_eps, 0.0);
        assert!(!p.sign_warning);
    }

    #[test]
    fn perturbation_keeps_products_positive_below_threshold() {
        let t = uniform_capmat(50, 3.0);
        let p = entrywise_perturb(&t, 1e-3, 1).unwrap();
        assert!(!p.sign_warning);
        assert!(p.effective_eps > 0.0 && p.effective_eps <= 1e-3);
        for (a, b) in p.matrix.sub().iter().zip(p.matrix.sup()) {
            assert!(a * b > 0.0);
        }
    }

    #[test]
    fn perturbation_warns_above_sign_threshold() {
        let t = uniform_capmat(50, 3.0);
        // |eta| = 0.157 < 0.2
        let p = entrywise_perturb(&t, 0.2, 1).unwrap();
        assert!(p.sign_warning);
    }

    #[test]
    fn perturbation_is_deterministic() {
        let t = uniform_capmat(20, 1.0);
        let a = entrywise_perturb(&t, 0.05, 77).unwrap();
        let b = entrywise_perturb(&t, 0.05, 77).unwrap();
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.effective_eps, b.effective_eps);
    }

    proptest! {
        #[test]
        fn toeplitz_params_round_trip(
            alpha in -5.0f64..5.0,
            eta in 0.05f64..3.0,
            beta in 0.05f64..3.0,
            a in -2.0f64..2.0,
            b in -2.0f64..2.0,
            neg in proptest::bool::ANY,
            n in 3usize..20,
        ) {
            let sign = if neg { -1.0 } else { 1.0 };
            let p = ToeplitzParams::new(alpha, sign * eta, sign * beta, a, b).unwrap();
            let t = corner_toeplitz(&p, n).unwrap();
            let q = toeplitz_params_of(&t, 0.0).unwrap();
            prop_assert_eq!(p.alpha, q.alpha);
            prop_assert_eq!(p.eta, q.eta);
            prop_assert_eq!(p.beta, q.beta);
            prop_assert!((p.a - q.a).abs() <= 1e-12);
            prop_assert!((p.b - q.b).abs() <= 1e-12);
        }

        #[test]
        fn capacitance_products_positive_for_random_chains(
            gammas in proptest::collection::vec(-4.0f64..4.0, 8),
            spacings in proptest::collection::vec(0.2f64..2.0, 7),
        ) {
            let chain = ChainConfig::new(1.0, spacings, gammas, 1.0, 1e-3).unwrap();
            let t = gauge_capacitance(&chain).unwrap();
            for (a, b) in t.sub().iter().zip(t.sup()) {
                prop_assert!(a * b > 0.0);
            }
            prop_assert!(t.max_abs_row_sum_deviation() <= 1e-12 * t.max_abs_entry());
        }
    }
}

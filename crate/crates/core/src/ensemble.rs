//! Monte Carlo disorder experiments: per-trial metrics, seeded ensembles
//! and phase-diagram sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capmat::{entrywise_perturb, gauge_capacitance, toeplitz_params_of, TriMatrix};
use crate::chain::ChainConfig;
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::spectra::full_spectrum;
use crate::stability::{fit_decay_rate, DEFAULT_DECAY_FLOOR};
use crate::topology::{protection_flags, SymbolSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbationKind {
    Spacing,
    Gauge,
    Entrywise,
    Combined,
}

impl std::str::FromStr for PerturbationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spacing" => Ok(PerturbationKind::Spacing),
            "gauge" => Ok(PerturbationKind::Gauge),
            "entrywise" => Ok(PerturbationKind::Entrywise),
            "combined" => Ok(PerturbationKind::Combined),
            other => Err(Error::invalid(format!(
                "unknown perturbation kind '{other}' (expected spacing|gauge|entrywise|combined)"
            ))),
        }
    }
}

impl std::fmt::Display for PerturbationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PerturbationKind::Spacing => "spacing",
            PerturbationKind::Gauge => "gauge",
            PerturbationKind::Entrywise => "entrywise",
            PerturbationKind::Combined => "combined",
        };
        f.write_str(s)
    }
}

/// Base chain parameters plus the disorder protocol of one experiment.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub ell: f64,
    pub s: f64,
    pub gamma: f64,
    pub kind: PerturbationKind,
    pub eps_s: f64,
    pub eps_gamma: f64,
    pub eps: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub edge_sites: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        // N = 50, gamma = 1, ell = s = 1 is the reference setup of the
        // disorder experiments.
        ExperimentConfig {
            n: 50,
            ell: 1.0,
            s: 1.0,
            gamma: 1.0,
            kind: PerturbationKind::Spacing,
            eps_s: 0.0,
            eps_gamma: 0.0,
            eps: 0.0,
            trials: 500,
            master_seed: 0,
            edge_sites: 2,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid(format!("need at least 2 resonators, got {}", self.n)));
        }
        if !(self.ell > 0.0) || !(self.s > 0.0) {
            return Err(Error::invalid(format!(
                "geometry must be positive, got ell = {}, s = {}",
                self.ell, self.s
            )));
        }
        if !(self.eps_s >= 0.0) || !(self.eps_gamma >= 0.0) || !(self.eps >= 0.0) {
            return Err(Error::invalid("disorder strengths must be >= 0"));
        }
        if matches!(self.kind, PerturbationKind::Spacing | PerturbationKind::Combined)
            && self.eps_s >= self.s
        {
            return Err(Error::invalid(format!(
                "spacing disorder {} >= gap {}; resonators could overlap",
                self.eps_s, self.s
            )));
        }
        if self.trials == 0 {
            return Err(Error::invalid("need at least one trial"));
        }
        if self.edge_sites == 0 || self.edge_sites > self.n {
            return Err(Error::invalid(format!(
                "edge_sites must be in 1..={}, got {}",
                self.n, self.edge_sites
            )));
        }
        Ok(())
    }

    pub fn base_chain(&self) -> Result<ChainConfig> {
        ChainConfig::uniform(self.n, self.ell, self.s, self.gamma)
    }

    /// Symbol of the unperturbed base matrix; perturbed spectra are tested
    /// against this fixed region.
    pub fn base_symbol(&self) -> Result<SymbolSpec> {
        let matrix = gauge_capacitance(&self.base_chain()?)?;
        let params = toeplitz_params_of(&matrix, 1e-9 * matrix.max_abs_entry().max(1.0))?;
        SymbolSpec::from_params(&params)
    }
}

/// `||v||_inf / ||v||_2`, between `1/sqrt(N)` (extended) and 1 (one site).
pub fn localisation_ratio(v: &[f64]) -> Result<f64> {
    let vmax = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if vmax == 0.0 {
        return Err(Error::invalid("localisation ratio of the zero vector"));
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(vmax / norm)
}

/// Whether `|v|` attains its maximum within the first `edge_sites` sites.
/// Near-ties (within 1e-9 relative, above solver noise and far below any
/// genuine maximum separation) resolve toward the smallest index, so the
/// constant kernel mode counts as edge-accumulated.
pub fn edge_accumulated(v: &[f64], edge_sites: usize) -> bool {
    let vmax = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if vmax == 0.0 {
        return false;
    }
    let threshold = vmax * (1.0 - 1e-9);
    match v.iter().position(|x| x.abs() >= threshold) {
        Some(idx) => idx < edge_sites,
        None => false,
    }
}

/// Metrics of a single disorder realisation.
#[derive(Clone, Debug, Serialize)]
pub struct TrialMetrics {
    pub protected_fraction: f64,
    pub edge_fraction: f64,
    pub both_fraction: f64,
    pub localisation_ratios: Vec<f64>,
    pub decay_rates: Vec<f64>,
    pub lambda1_abs: f64,
}

/// Build the perturbed matrix of one trial according to the configured kind.
fn perturbed_matrix(config: &ExperimentConfig, trial_seed: u64) -> Result<TriMatrix> {
    let base = config.base_chain()?;
    match config.kind {
        PerturbationKind::Spacing => {
            gauge_capacitance(&base.with_spacing_disorder(config.eps_s, trial_seed)?)
        }
        PerturbationKind::Gauge => {
            gauge_capacitance(&base.with_gauge_disorder(config.eps_gamma, trial_seed)?)
        }
        PerturbationKind::Entrywise => {
            let matrix = gauge_capacitance(&base)?;
            Ok(entrywise_perturb(&matrix, config.eps, trial_seed)?.matrix)
        }
        PerturbationKind::Combined => {
            let chain = base
                .with_spacing_disorder(config.eps_s, trial_seed)?
                .with_gauge_disorder(config.eps_gamma, trial_seed)?;
            gauge_capacitance(&chain)
        }
    }
}

/// The perturbed matrix of trial `trial_index`, reproducible from the
/// master seed alone.
pub fn trial_matrix(config: &ExperimentConfig, trial_index: u64) -> Result<TriMatrix> {
    perturbed_matrix(config, derive_seed(config.master_seed, "trial", trial_index))
}

/// Run one seeded realisation: perturb, solve, and score the spectrum
/// against the unperturbed symbol.
pub fn run_trial(config: &ExperimentConfig, trial_index: u64) -> Result<TrialMetrics> {
    config.validate()?;
    let symbol = config.base_symbol()?;
    let trial_seed = derive_seed(config.master_seed, "trial", trial_index);
    let matrix = perturbed_matrix(config, trial_seed)?;
    let sd = full_spectrum(&matrix)?;

    let n = sd.n() as f64;
    let protected = protection_flags(sd.eigenvalues(), &symbol, symbol.default_boundary_tol());
    let edge: Vec<bool> = sd
        .eigenvectors()
        .iter()
        .map(|v| edge_accumulated(v, config.edge_sites))
        .collect();
    let both = protected
        .iter()
        .zip(&edge)
        .filter(|(p, e)| **p && **e)
        .count();

    let mut localisation_ratios = Vec::with_capacity(sd.n());
    let mut decay_rates = Vec::with_capacity(sd.n());
    for v in sd.eigenvectors() {
        localisation_ratios.push(localisation_ratio(v)?);
        decay_rates.push(fit_decay_rate(v, DEFAULT_DECAY_FLOOR).unwrap_or(f64::NAN));
    }

    Ok(TrialMetrics {
        protected_fraction: protected.iter().filter(|p| **p).count() as f64 / n,
        edge_fraction: edge.iter().filter(|e| **e).count() as f64 / n,
        both_fraction: both as f64 / n,
        localisation_ratios,
        decay_rates,
        lambda1_abs: sd.eigenvalues()[0].abs(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub enum TrialOutcome {
    Ok(TrialMetrics),
    Failed(String),
}

impl TrialOutcome {
    pub fn metrics(&self) -> Option<&TrialMetrics> {
        match self {
            TrialOutcome::Ok(m) => Some(m),
            TrialOutcome::Failed(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MetricStat {
    pub mean: f64,
    pub std: f64,
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> MetricStat {
    let n = values.clone().count();
    if n == 0 {
        return MetricStat {
            mean: f64::NAN,
            std: f64::NAN,
        };
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    let std = if n >= 2 {
        (values.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    MetricStat { mean, std }
}

/// Aggregated disorder statistics; failed trials are kept in the table but
/// excluded from the means.
#[derive(Clone, Debug, Serialize)]
pub struct EnsembleSummary {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialOutcome>,
    pub ok_count: usize,
    pub failed_count: usize,
    pub protected: MetricStat,
    pub edge: MetricStat,
    pub both: MetricStat,
    pub lambda1_abs: MetricStat,
    /// Mean over trials of the descending-sorted localisation profile.
    pub mean_sorted_localisation: Vec<f64>,
}

/// Run `trials` independent seeded realisations (in parallel, merged in
/// trial order) and aggregate.
pub fn run_ensemble(config: &ExperimentConfig) -> Result<EnsembleSummary> {
    config.validate()?;
    let trials: Vec<TrialOutcome> = (0..config.trials as u64)
        .into_par_iter()
        .map(|i| match run_trial(config, i) {
            Ok(m) => TrialOutcome::Ok(m),
            Err(e) => TrialOutcome::Failed(e.to_string()),
        })
        .collect();

    let ok: Vec<&TrialMetrics> = trials.iter().filter_map(|t| t.metrics()).collect();
    let ok_count = ok.len();
    let failed_count = trials.len() - ok_count;

    let stat = |f: fn(&TrialMetrics) -> f64| mean_std(ok.iter().map(move |m| f(m)));
    let protected = stat(|m| m.protected_fraction);
    let edge = stat(|m| m.edge_fraction);
    let both = stat(|m| m.both_fraction);
    let lambda1_abs = stat(|m| m.lambda1_abs);

    let mut mean_sorted_localisation = Vec::new();
    if ok_count > 0 {
        mean_sorted_localisation = vec![0.0; config.n];
        for m in &ok {
            let mut sorted = m.localisation_ratios.clone();
            sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (acc, r) in mean_sorted_localisation.iter_mut().zip(&sorted) {
                *acc += r;
            }
        }
        for acc in &mut mean_sorted_localisation {
            *acc /= ok_count as f64;
        }
    }

    Ok(EnsembleSummary {
        config: config.clone(),
        trials,
        ok_count,
        failed_count,
        protected,
        edge,
        both,
        lambda1_abs,
        mean_sorted_localisation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    EpsS,
    EpsGamma,
    Eps,
    Gamma,
    S,
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eps_s" => Ok(SweepParam::EpsS),
            "eps_gamma" => Ok(SweepParam::EpsGamma),
            "eps" => Ok(SweepParam::Eps),
            "gamma" => Ok(SweepParam::Gamma),
            "s" => Ok(SweepParam::S),
            other => Err(Error::invalid(format!(
                "unknown sweep parameter '{other}' (expected eps_s|eps_gamma|eps|gamma|s)"
            ))),
        }
    }
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SweepParam::EpsS => "eps_s",
            SweepParam::EpsGamma => "eps_gamma",
            SweepParam::Eps => "eps",
            SweepParam::Gamma => "gamma",
            SweepParam::S => "s",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AxisSpec {
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(param: SweepParam, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("axis needs at least one grid point"));
        }
        if !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(Error::invalid(format!("bad axis range [{lo}, {hi}]")));
        }
        Ok(AxisSpec { param, lo, hi, count })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        (0..self.count)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

fn apply_param(config: &mut ExperimentConfig, param: SweepParam, value: f64) {
    match param {
        SweepParam::EpsS => config.eps_s = value,
        SweepParam::EpsGamma => config.eps_gamma = value,
        SweepParam::Eps => config.eps = value,
        SweepParam::Gamma => config.gamma = value,
        SweepParam::S => config.s = value,
    }
}

/// One grid cell of a sweep. Cells whose configuration violates a builder
/// precondition are marked invalid instead of aborting the sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepCell {
    pub value1: f64,
    pub value2: f64,
    pub mean_protected: f64,
    pub mean_edge: f64,
    pub mean_both: f64,
    pub trials_ok: usize,
    pub valid: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    /// Row-major over (axis1 index, axis2 index).
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn rows(&self) -> usize {
        self.axis1.count
    }

    pub fn cols(&self) -> usize {
        self.axis2.map_or(1, |a| a.count)
    }
}

/// Run one ensemble per grid cell; each cell gets its own derived master
/// seed so cells are independent but the whole sweep is reproducible.
pub fn sweep_phase_diagram(
    axis1: &AxisSpec,
    axis2: Option<&AxisSpec>,
    template: &ExperimentConfig,
) -> Result<SweepResult> {
    let values1 = axis1.values();
    let values2 = axis2.map_or_else(|| vec![f64::NAN], |a| a.values());
    let grid: Vec<(usize, f64, f64)> = values1
        .iter()
        .flat_map(|v1| values2.iter().map(move |v2| (*v1, *v2)))
        .enumerate()
        .map(|(i, (v1, v2))| (i, v1, v2))
        .collect();

    let cells: Vec<SweepCell> = grid
        .into_par_iter()
        .map(|(index, v1, v2)| {
            let mut config = template.clone();
            apply_param(&mut config, axis1.param, v1);
            if let Some(a2) = axis2 {
                apply_param(&mut config, a2.param, v2);
            }
            config.master_seed = derive_seed(template.master_seed, "cell", index as u64);
            let value2 = if axis2.is_some() { v2 } else { 0.0 };
            if config.validate().is_err() {
                return SweepCell {
                    value1: v1,
                    value2,
                    mean_protected: f64::NAN,
                    mean_edge: f64::NAN,
                    mean_both: f64::NAN,
                    trials_ok: 0,
                    valid: false,
                };
            }
            match run_ensemble(&config) {
                Ok(summary) => SweepCell {
                    value1: v1,
                    value2,
                    mean_protected: summary.protected.mean,
                    mean_edge: summary.edge.mean,
                    mean_both: summary.both.mean,
                    trials_ok: summary.ok_count,
                    valid: true,
                },
                Err(_) => SweepCell {
                    value1: v1,
                    value2,
                    mean_protected: f64::NAN,
                    mean_edge: f64::NAN,
                    mean_both: f64::NAN,
                    trials_ok: 0,
                    valid: false,
                },
            }
        })
        .collect();

    Ok(SweepResult {
        axis1: *axis1,
        axis2: axis2.copied(),
        cells,
    })
}

//! CSV and structured-text serialisation of every result type. All writers
//! are pure string builders so byte-level determinism is testable; float
//! fields use the shortest round-trip representation.

use std::fmt::Write as _;
use std::path::Path;

use crate::capmat::TriMatrix;
use crate::chain::ModeProfile;
use crate::ensemble::{EnsembleSummary, SweepResult, TrialOutcome};
use crate::error::{Error, Result};
use crate::spectra::SpectralDecomposition;
use crate::stability::StabilityReport;
use crate::topology::{symbol_samples, SymbolSpec};

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Three rows `sub`, `diag`, `sup`; the shorter off-diagonal rows are
/// left-padded with one empty field.
pub fn trimatrix_csv(t: &TriMatrix) -> String {
    let join = |v: &[f64]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "sub,,{}\ndiag,{}\nsup,,{}\n",
        join(t.sub()),
        join(t.diag()),
        join(t.sup())
    )
}

/// One JSON object with fields `n`, `diag`, `sub`, `sup`.
pub fn trimatrix_json(t: &TriMatrix) -> String {
    serde_json::to_string_pretty(t).expect("TriMatrix serialises")
}

/// `k,lambda,residual`, one row per eigenvalue (k = 1..n ascending).
pub fn spectrum_csv(sd: &SpectralDecomposition) -> String {
    let mut out = String::from("k,lambda,residual\n");
    for (i, (lambda, r)) in sd.eigenvalues().iter().zip(sd.residuals()).enumerate() {
        writeln!(out, "{},{},{}", i + 1, lambda, r).unwrap();
    }
    out
}

/// Wide eigenvector matrix `k,v1..vn`.
pub fn eigenvectors_csv(sd: &SpectralDecomposition) -> String {
    let n = sd.n();
    let mut out = String::from("k");
    for j in 1..=n {
        write!(out, ",v{j}").unwrap();
    }
    out.push('\n');
    for (i, v) in sd.eigenvectors().iter().enumerate() {
        write!(out, "{}", i + 1).unwrap();
        for x in v {
            write!(out, ",{x}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// `x,u`, one row per sample.
pub fn mode_profile_csv(profile: &ModeProfile) -> String {
    let mut out = String::from("x,u\n");
    for (x, u) in profile.grid().iter().zip(profile.values()) {
        writeln!(out, "{x},{u}").unwrap();
    }
    out
}

/// `theta,re,im` over the symbol's sample grid.
pub fn symbol_csv(spec: &SymbolSpec) -> String {
    let mut out = String::from("theta,re,im\n");
    let step = 2.0 * std::f64::consts::PI / spec.samples() as f64;
    for (i, z) in symbol_samples(spec).iter().enumerate() {
        writeln!(out, "{},{},{}", i as f64 * step, z.re, z.im).unwrap();
    }
    out
}

/// `k,r_plus,rho,decay_ok` for the per-mode stability records.
pub fn stability_csv(report: &StabilityReport) -> String {
    let mut out = String::from("k,r_plus,rho,decay_ok\n");
    for m in &report.modes {
        writeln!(out, "{},{},{},{}", m.k, m.r_plus, m.rho, u8::from(m.decay_ok)).unwrap();
    }
    out
}

/// Full report as structured text (JSON).
pub fn stability_json(report: &StabilityReport) -> String {
    serde_json::to_string_pretty(report).expect("StabilityReport serialises")
}

/// `trial,protected_fraction,edge_fraction,both_fraction,lambda1_abs,failed`.
pub fn trials_csv(summary: &EnsembleSummary) -> String {
    let mut out = String::from("trial,protected_fraction,edge_fraction,both_fraction,lambda1_abs,failed\n");
    for (i, outcome) in summary.trials.iter().enumerate() {
        match outcome {
            TrialOutcome::Ok(m) => writeln!(
                out,
                "{},{},{},{},{},0",
                i, m.protected_fraction, m.edge_fraction, m.both_fraction, m.lambda1_abs
            )
            .unwrap(),
            TrialOutcome::Failed(_) => writeln!(out, "{i},NaN,NaN,NaN,NaN,1").unwrap(),
        }
    }
    out
}

/// `trial,k,ratio,decay_rate` for every successful trial.
pub fn localisation_csv(summary: &EnsembleSummary) -> String {
    let mut out = String::from("trial,k,ratio,decay_rate\n");
    for (i, outcome) in summary.trials.iter().enumerate() {
        if let TrialOutcome::Ok(m) = outcome {
            for (k, (r, d)) in m
                .localisation_ratios
                .iter()
                .zip(&m.decay_rates)
                .enumerate()
            {
                writeln!(out, "{},{},{},{}", i, k + 1, r, d).unwrap();
            }
        }
    }
    out
}

/// Summary statistics as structured text (JSON), without the per-trial table.
pub fn summary_json(summary: &EnsembleSummary) -> String {
    let value = serde_json::json!({
        "config": summary.config,
        "ok_count": summary.ok_count,
        "failed_count": summary.failed_count,
        "protected": summary.protected,
        "edge": summary.edge,
        "both": summary.both,
        "lambda1_abs": summary.lambda1_abs,
        "mean_sorted_localisation": summary.mean_sorted_localisation,
    });
    serde_json::to_string_pretty(&value).expect("summary serialises")
}

/// `axis1,axis2,mean_protected,trials_ok`, row-major; invalid cells carry
/// NaN means and zero trials.
pub fn sweep_csv(sweep: &SweepResult) -> String {
    let mut out = String::from("axis1,axis2,mean_protected,trials_ok\n");
    for cell in &sweep.cells {
        writeln!(
            out,
            "{},{},{},{}",
            cell.value1, cell.value2, cell.mean_protected, cell.trials_ok
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capmat::{gauge_capacitance, toeplitz_params_of};
    use crate::chain::{mode_profile, ChainConfig};
    use crate::ensemble::{run_ensemble, ExperimentConfig, PerturbationKind};
    use crate::spectra::full_spectrum;

    #[test]
    fn trimatrix_csv_shape() {
        let t = TriMatrix::new(vec![1.0, 2.0, 3.0], vec![-0.5, -0.5], vec![-1.5, -1.5]).unwrap();
        let csv = trimatrix_csv(&t);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "sub,,-0.5,-0.5");
        assert_eq!(lines[1], "diag,1,2,3");
        assert_eq!(lines[2], "sup,,-1.5,-1.5");
        // every row has the same number of fields
        assert!(lines.iter().all(|l| l.split(',').count() == 4));
    }

    #[test]
    fn trimatrix_json_round_trips_fields() {
        let t = TriMatrix::new(vec![1.0, 2.0], vec![0.25], vec![4.0]).unwrap();
        let json = trimatrix_json(&t);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["n"], 2);
        assert_eq!(value["diag"][1], 2.0);
        assert_eq!(value["sub"][0], 0.25);
        assert_eq!(value["sup"][0], 4.0);
    }

    #[test]
    fn spectrum_csv_has_header_and_rows() {
        let chain = ChainConfig::uniform(5, 1.0, 1.0, 1.0).unwrap();
        let sd = full_spectrum(&gauge_capacitance(&chain).unwrap()).unwrap();
        let csv = spectrum_csv(&sd);
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("k,lambda,residual\n"));
        let csv_wide = eigenvectors_csv(&sd);
        assert!(csv_wide.starts_with("k,v1,v2,v3,v4,v5\n"));
        assert_eq!(csv_wide.lines().count(), 6);
    }

    #[test]
    fn mode_profile_csv_schema() {
        let chain = ChainConfig::uniform(3, 1.0, 1.0, 1.0).unwrap();
        let profile = mode_profile(&chain, &[1.0, 0.0, 0.0], 2).unwrap();
        let csv = mode_profile_csv(&profile);
        assert!(csv.starts_with("x,u\n"));
        assert_eq!(csv.lines().count(), profile.len() + 1);
    }

    #[test]
    fn ensemble_exports_have_documented_schemas() {
        let config = ExperimentConfig {
            n: 8,
            trials: 3,
            eps_s: 0.05,
            kind: PerturbationKind::Spacing,
            master_seed: 1,
            ..ExperimentConfig::default()
        };
        let summary = run_ensemble(&config).unwrap();
        let trials = trials_csv(&summary);
        assert_eq!(trials.lines().count(), 4); // header + 3 trials
        assert!(trials.starts_with(
            "trial,protected_fraction,edge_fraction,both_fraction,lambda1_abs,failed\n"
        ));
        let loc = localisation_csv(&summary);
        assert_eq!(loc.lines().count(), 1 + 3 * 8);
        assert!(loc.starts_with("trial,k,ratio,decay_rate\n"));
    }

    #[test]
    fn symbol_csv_row_count_matches_samples() {
        let chain = ChainConfig::uniform(5, 1.0, 1.0, 1.0).unwrap();
        let t = gauge_capacitance(&chain).unwrap();
        let spec = SymbolSpec::from_params(&toeplitz_params_of(&t, 1e-12).unwrap())
            .unwrap()
            .with_samples(128)
            .unwrap();
        let csv = symbol_csv(&spec);
        assert_eq!(csv.lines().count(), 129);
        assert!(csv.starts_with("theta,re,im\n"));
    }
}

//! Command-line front end: spectra, disorder ensembles, phase diagrams,
//! stability bounds, eigenmode exports and symbol winding.
//!
//! Exit codes: 0 on success, 2 for invalid configuration, 3 when more than
//! half of an ensemble's trials fail in the solver.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;

use skinlab::capmat::{entrywise_perturb, gauge_capacitance, toeplitz_params_of};
use skinlab::chain::{mode_profile, ChainConfig};
use skinlab::ensemble::{
    edge_accumulated, run_ensemble, sweep_phase_diagram, trial_matrix, AxisSpec,
    ExperimentConfig, PerturbationKind, SweepCell, SweepResult,
};
use skinlab::error::Error;
use skinlab::export;
use skinlab::spectra::full_spectrum;
use skinlab::stability::stability_report;
use skinlab::svg;
use skinlab::topology::{protected_interval, winding_number, SymbolSpec};

#[derive(Parser)]
#[command(
    name = "skinlab",
    version,
    about = "Spectral laboratory for non-Hermitian resonator chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and residual certificates of an unperturbed chain.
    Spectrum {
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        ell: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        /// Output CSV (k,lambda,residual).
        #[arg(long)]
        out: PathBuf,
        /// Optional wide eigenvector CSV (k,v1..vn).
        #[arg(long)]
        vectors_out: Option<PathBuf>,
    },
    /// Seeded Monte Carlo disorder ensemble.
    Ensemble {
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Directory for trials.csv, localisation.csv and summary.json.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Phase diagram over one or two parameter axes.
    Phase {
        #[command(flatten)]
        exp: ExperimentArgs,
        /// First axis, formatted name:lo:hi:count (eps_s|eps_gamma|eps|gamma|s).
        #[arg(long)]
        axis1: String,
        /// Optional second axis, same format.
        #[arg(long)]
        axis2: Option<String>,
        /// Directory for sweep.csv and the rendered SVG.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Stability constants and the eigenvalue certificate for one
    /// entrywise perturbation level.
    Bounds {
        #[arg(long, default_value_t = 3.0)]
        gamma: f64,
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        ell: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optional directory for stability.csv and stability.json.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Eigenvector magnitudes, optional disorder, optional spatial profile.
    Modes {
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Directory for vectors.csv (and modes.svg / profile CSVs).
        #[arg(long)]
        out_dir: PathBuf,
        /// Render the semi-log eigenvector overlay to modes.svg.
        #[arg(long)]
        render: bool,
        /// Also export the spatial profile of this mode (1-based index).
        #[arg(long)]
        profile_k: Option<usize>,
        #[arg(long, default_value_t = 32)]
        samples_per_segment: usize,
    },
    /// Symbol curve, per-eigenvalue winding and the protected interval.
    Winding {
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        ell: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        /// Directory for symbol.csv and spectrum.csv.
        #[arg(long)]
        out_dir: PathBuf,
    },
}

/// Experiment parameters; unset flags fall back to the --config file and
/// then to the defaults (N=50, ell=s=1, gamma=1, spacing disorder, 500
/// trials, seed 0, 2 edge sites).
#[derive(Args, Clone)]
struct ExperimentArgs {
    /// TOML key-value file with the same keys as the flags below
    /// (n, ell, s, gamma, kind, eps_s, eps_gamma, eps, trials,
    /// master_seed, edge_sites).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    ell: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// spacing | gauge | entrywise | combined; omit for an unperturbed run
    /// of `modes`.
    #[arg(long)]
    kind: Option<PerturbationKind>,
    #[arg(long)]
    eps_s: Option<f64>,
    #[arg(long)]
    eps_gamma: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    edge_sites: Option<usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: Option<usize>,
    ell: Option<f64>,
    s: Option<f64>,
    gamma: Option<f64>,
    kind: Option<PerturbationKind>,
    eps_s: Option<f64>,
    eps_gamma: Option<f64>,
    eps: Option<f64>,
    trials: Option<usize>,
    master_seed: Option<u64>,
    edge_sites: Option<usize>,
}

impl ExperimentArgs {
    fn resolve(&self) -> Result<ExperimentConfig, Error> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                toml::from_str::<ConfigFile>(&text).map_err(|e| Error::Config(e.to_string()))?
            }
            None => ConfigFile::default(),
        };
        let defaults = ExperimentConfig::default();
        Ok(ExperimentConfig {
            n: self.n.or(file.n).unwrap_or(defaults.n),
            ell: self.ell.or(file.ell).unwrap_or(defaults.ell),
            s: self.s.or(file.s).unwrap_or(defaults.s),
            gamma: self.gamma.or(file.gamma).unwrap_or(defaults.gamma),
            kind: self.kind.or(file.kind).unwrap_or(defaults.kind),
            eps_s: self.eps_s.or(file.eps_s).unwrap_or(defaults.eps_s),
            eps_gamma: self.eps_gamma.or(file.eps_gamma).unwrap_or(defaults.eps_gamma),
            eps: self.eps.or(file.eps).unwrap_or(defaults.eps),
            trials: self.trials.or(file.trials).unwrap_or(defaults.trials),
            master_seed: self.seed.or(file.master_seed).unwrap_or(defaults.master_seed),
            edge_sites: self.edge_sites.or(file.edge_sites).unwrap_or(defaults.edge_sites),
        })
    }
}

struct CliError {
    code: i32,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidArgument(_)
            | Error::Config(_)
            | Error::GaugeOverflow { .. }
            | Error::DimensionMismatch { .. } => 2,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn ensure_dir(dir: &Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum {
            n,
            gamma,
            ell,
            s,
            out,
            vectors_out,
        } => {
            let chain = ChainConfig::uniform(n, ell, s, gamma)?;
            let matrix = gauge_capacitance(&chain)?;
            let sd = full_spectrum(&matrix)?;
            export::write_string(&out, &export::spectrum_csv(&sd))?;
            if let Some(path) = vectors_out {
                export::write_string(&path, &export::eigenvectors_csv(&sd))?;
            }
            println!(
                "spectrum: n={} gamma={} lambda in [{}, {}] -> {}",
                n,
                gamma,
                sd.eigenvalues()[0],
                sd.eigenvalues()[n - 1],
                out.display()
            );
            Ok(())
        }
        Command::Ensemble { exp, out_dir } => {
            let config = exp.resolve()?;
            ensure_dir(&out_dir)?;
            let summary = run_ensemble(&config)?;
            export::write_string(&out_dir.join("trials.csv"), &export::trials_csv(&summary))?;
            export::write_string(
                &out_dir.join("localisation.csv"),
                &export::localisation_csv(&summary),
            )?;
            export::write_string(&out_dir.join("summary.json"), &export::summary_json(&summary))?;
            println!(
                "ensemble: kind={} trials={} ok={} failed={} mean protected={:.4} edge={:.4} both={:.4}",
                config.kind,
                config.trials,
                summary.ok_count,
                summary.failed_count,
                summary.protected.mean,
                summary.edge.mean,
                summary.both.mean,
            );
            if 2 * summary.failed_count > config.trials {
                return Err(CliError {
                    code: 3,
                    message: format!(
                        "solver failed in {} of {} trials",
                        summary.failed_count, config.trials
                    ),
                });
            }
            Ok(())
        }
        Command::Phase {
            exp,
            axis1,
            axis2,
            out_dir,
        } => {
            let template = exp.resolve()?;
            let axis1 = parse_axis(&axis1)?;
            let axis2 = axis2.as_deref().map(parse_axis).transpose()?;
            ensure_dir(&out_dir)?;
            let sweep = sweep_phase_diagram(&axis1, axis2.as_ref(), &template)?;
            export::write_string(&out_dir.join("sweep.csv"), &export::sweep_csv(&sweep))?;
            let svg_name = render_sweep(&sweep, &out_dir)?;
            println!(
                "phase: {} cells -> {} and {}",
                sweep.cells.len(),
                out_dir.join("sweep.csv").display(),
                out_dir.join(svg_name).display()
            );
            Ok(())
        }
        Command::Bounds {
            gamma,
            n,
            ell,
            s,
            eps,
            seed,
            out_dir,
        } => {
            let chain = ChainConfig::uniform(n, ell, s, gamma)?;
            let matrix = gauge_capacitance(&chain)?;
            let perturbed = entrywise_perturb(&matrix, eps, seed)?;
            let report = stability_report(&matrix, &perturbed.matrix)?;
            println!("stability report: gamma={gamma} n={n} eps={eps} seed={seed}");
            println!(
                "  C1={:.6} C2={:.6} C3={:.6} effective_eps={:.3e}",
                report.c1, report.c2, report.c3, report.effective_eps
            );
            println!(
                "  eigenvalue deviation {:.3e} vs bound {:.3e} -> {}",
                report.eigenvalue_max_dev,
                report.eigenvalue_bound,
                if report.pass { "pass" } else { "FAIL" }
            );
            let ok = report.modes.iter().filter(|m| m.decay_ok).count();
            println!("  decay condition holds for {ok} of {} modes", report.modes.len());
            if perturbed.sign_warning {
                println!("  warning: eps may flip off-diagonal signs");
            }
            if let Some(dir) = out_dir {
                ensure_dir(&dir)?;
                export::write_string(&dir.join("stability.csv"), &export::stability_csv(&report))?;
                export::write_string(&dir.join("stability.json"), &export::stability_json(&report))?;
            }
            Ok(())
        }
        Command::Modes {
            exp,
            out_dir,
            render,
            profile_k,
            samples_per_segment,
        } => {
            let config = exp.resolve()?;
            ensure_dir(&out_dir)?;
            // no --kind means the unperturbed chain
            let matrix = if exp.kind.is_some() {
                config.validate()?;
                trial_matrix(&config, 0)?
            } else {
                gauge_capacitance(&config.base_chain()?)?
            };
            let sd = full_spectrum(&matrix)?;
            export::write_string(&out_dir.join("vectors.csv"), &export::eigenvectors_csv(&sd))?;
            if render {
                let highlight: Vec<bool> = sd
                    .eigenvectors()
                    .iter()
                    .map(|v| !edge_accumulated(v, config.edge_sites))
                    .collect();
                let svg =
                    svg::semilog_overlay("eigenvector magnitudes", sd.eigenvectors(), &highlight);
                export::write_string(&out_dir.join("modes.svg"), &svg)?;
            }
            if let Some(k) = profile_k {
                if k == 0 || k > sd.n() {
                    return Err(Error::invalid(format!(
                        "profile mode index must be in 1..={}, got {k}",
                        sd.n()
                    ))
                    .into());
                }
                let chain = config.base_chain()?;
                let profile = mode_profile(&chain, sd.eigenvector(k - 1), samples_per_segment)?;
                export::write_string(
                    &out_dir.join(format!("profile_{k}.csv")),
                    &export::mode_profile_csv(&profile),
                )?;
            }
            println!("modes: n={} -> {}", sd.n(), out_dir.join("vectors.csv").display());
            Ok(())
        }
        Command::Winding {
            gamma,
            n,
            ell,
            s,
            samples,
            out_dir,
        } => {
            let chain = ChainConfig::uniform(n, ell, s, gamma)?;
            let matrix = gauge_capacitance(&chain)?;
            let params = toeplitz_params_of(&matrix, 1e-9 * matrix.max_abs_entry().max(1.0))?;
            let spec = SymbolSpec::from_params(&params)?.with_samples(samples)?;
            ensure_dir(&out_dir)?;
            export::write_string(&out_dir.join("symbol.csv"), &export::symbol_csv(&spec))?;

            let sd = full_spectrum(&matrix)?;
            let tol = spec.default_boundary_tol();
            let mut csv = String::from("k,lambda,winding,min_curve_distance\n");
            for (i, lambda) in sd.eigenvalues().iter().enumerate() {
                let w = winding_number(&spec, Complex64::new(*lambda, 0.0), tol);
                let label = match w.winding {
                    Some(v) => v.to_string(),
                    None => "boundary".to_string(),
                };
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    i + 1,
                    lambda,
                    label,
                    w.min_curve_distance
                ));
            }
            export::write_string(&out_dir.join("spectrum.csv"), &csv)?;

            let (lo, hi) = protected_interval(&spec)?;
            println!(
                "winding: gamma={gamma} n={n} protected interval ({lo}, {hi}) -> {}",
                out_dir.display()
            );
            Ok(())
        }
    }
}

fn parse_axis(text: &str) -> Result<AxisSpec, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        return Err(Error::invalid(format!(
            "axis must be name:lo:hi:count, got '{text}'"
        )));
    }
    let param = parts[0].parse()?;
    let lo: f64 = parts[1]
        .parse()
        .map_err(|_| Error::invalid(format!("bad axis lower bound '{}'", parts[1])))?;
    let hi: f64 = parts[2]
        .parse()
        .map_err(|_| Error::invalid(format!("bad axis upper bound '{}'", parts[2])))?;
    let count: usize = parts[3]
        .parse()
        .map_err(|_| Error::invalid(format!("bad axis count '{}'", parts[3])))?;
    AxisSpec::new(param, lo, hi, count)
}

/// 1D sweeps render the three metric curves, 2D sweeps the protected-
/// fraction heatmap. Returns the file name written.
fn render_sweep(sweep: &SweepResult, out_dir: &Path) -> Result<&'static str, Error> {
    match sweep.axis2 {
        None => {
            let take = |f: fn(&SweepCell) -> f64, name: &str| svg::Series {
                name: name.to_string(),
                points: sweep.cells.iter().map(|c| (c.value1, f(c))).collect(),
            };
            let series = vec![
                take(|c| c.mean_edge, "edge"),
                take(|c| c.mean_protected, "protected"),
                take(|c| c.mean_both, "both"),
            ];
            let svg = svg::line_chart(
                "disorder response",
                &sweep.axis1.param.to_string(),
                "mean fraction",
                &series,
            );
            export::write_string(&out_dir.join("curves.svg"), &svg)?;
            Ok("curves.svg")
        }
        Some(axis2) => {
            let rows = sweep.rows();
            let cols = sweep.cols();
            // heatmap x-axis = axis1, y-axis = axis2
            let mut values = vec![vec![f64::NAN; rows]; cols];
            for (i, cell) in sweep.cells.iter().enumerate() {
                let r = i / cols;
                let c = i % cols;
                values[c][r] = cell.mean_protected;
            }
            let svg = svg::heatmap(
                "mean protected fraction",
                &sweep.axis1.param.to_string(),
                &axis2.param.to_string(),
                &sweep.axis1.values(),
                &axis2.values(),
                &values,
                true,
            );
            export::write_string(&out_dir.join("heatmap.svg"), &svg)?;
            Ok("heatmap.svg")
        }
    }
}

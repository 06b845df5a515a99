//! Spectral laboratory for the non-Hermitian skin effect in one-dimensional
//! chains of subwavelength resonators.
//!
//! The crate builds gauge capacitance matrices for resonator chains with an
//! imaginary gauge potential, computes their (real) spectra with a
//! structure-exploiting tridiagonal eigensolver, evaluates the stability
//! constants that bound eigenvalue and eigenvector drift under random
//! perturbations, computes the winding of the associated Toeplitz symbol,
//! and runs seeded Monte Carlo disorder ensembles that expose the
//! competition between edge condensation and bulk localisation.

// Validation predicates use negated comparisons (`!(x > 0.0)`) so NaN is
// rejected along with out-of-range values; frozen oracle constants in the
// tests keep their full 17-digit decimal forms.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod capmat;
pub mod chain;
pub mod ensemble;
pub mod error;
pub mod export;
pub mod rng;
pub mod spectra;
pub mod stability;
pub mod svg;
pub mod topology;

pub use capmat::{
    corner_toeplitz, entrywise_perturb, gauge_capacitance, toeplitz_params_of, Perturbed,
    ToeplitzParams, TriMatrix,
};
pub use chain::{mode_profile, subwavelength_frequency, ChainConfig, ModeProfile};
pub use ensemble::{
    edge_accumulated, localisation_ratio, run_ensemble, run_trial, sweep_phase_diagram, AxisSpec,
    EnsembleSummary, ExperimentConfig, PerturbationKind, SweepParam, SweepResult, TrialMetrics,
};
pub use error::{Error, Result};
pub use spectra::{
    closed_form_spectrum, eigenvalues_sturm, eigenvector_inverse_iteration, full_spectrum,
    spectral_norm, symmetric_eigenvalues, symmetrize, SpectralDecomposition, Symmetrization,
};
pub use stability::{
    c1, c2_c3, characteristic_roots, check_eigenvalue_stability, decay_condition, fit_decay_rate,
    stability_report, zeta_bound, BoundInputs, StabilityReport,
};
pub use topology::{
    protected_fraction, protected_interval, winding_number, SymbolSpec, WindingResult,
};

#![allow(clippy::excessive_precision)] // frozen oracle constants keep full digits

//! Exercises the C ABI from Rust and verifies that the generated header
//! actually compiles and links from C.

use std::ptr;

use skinlab_ffi::*;

#[test]
fn chain_matrix_spectrum_round_trip() {
    unsafe {
        let mut chain = ptr::null_mut();
        assert_eq!(
            skinlab_chain_uniform(50, 1.0, 1.0, 3.0, &mut chain),
            SkinlabStatus::Ok
        );
        assert_eq!(skinlab_chain_n(chain), 50);

        let mut matrix = ptr::null_mut();
        assert_eq!(skinlab_gauge_capacitance(chain, &mut matrix), SkinlabStatus::Ok);
        assert_eq!(skinlab_matrix_n(matrix), 50);

        let mut sub = vec![0.0; 49];
        assert_eq!(
            skinlab_matrix_copy_sub(matrix, sub.as_mut_ptr(), sub.len()),
            SkinlabStatus::Ok
        );
        assert!((sub[0] + 0.15718708947376786).abs() < 1e-12);

        let mut spectrum = ptr::null_mut();
        assert_eq!(skinlab_full_spectrum(matrix, &mut spectrum), SkinlabStatus::Ok);
        let n = skinlab_spectrum_n(spectrum);
        assert_eq!(n, 50);
        let mut eigenvalues = vec![0.0; n];
        assert_eq!(
            skinlab_spectrum_copy_eigenvalues(spectrum, eigenvalues.as_mut_ptr(), n),
            SkinlabStatus::Ok
        );
        assert!(eigenvalues[0].abs() <= 1e-10);
        assert!(eigenvalues.windows(2).all(|w| w[0] <= w[1]));

        let mut v = vec![0.0; n];
        assert_eq!(
            skinlab_spectrum_copy_eigenvector(spectrum, 0, v.as_mut_ptr(), n),
            SkinlabStatus::Ok
        );
        let c = 1.0 / (n as f64).sqrt();
        assert!(v.iter().all(|x| (x - c).abs() < 1e-9));

        // protection of the nonzero modes against the chain's own symbol
        let (mut alpha, mut eta, mut beta, mut a, mut b) = (0.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            skinlab_matrix_toeplitz_params(
                matrix, 1e-9, &mut alpha, &mut eta, &mut beta, &mut a, &mut b
            ),
            SkinlabStatus::Ok
        );
        let mut fraction = 0.0;
        assert_eq!(
            skinlab_protected_fraction(
                eigenvalues.as_ptr(),
                n,
                alpha,
                eta,
                beta,
                0,
                -1.0,
                &mut fraction
            ),
            SkinlabStatus::Ok
        );
        assert!((fraction - 49.0 / 50.0).abs() < 1e-12);

        skinlab_spectrum_free(spectrum);
        skinlab_matrix_free(matrix);
        skinlab_chain_free(chain);
    }
}

#[test]
fn perturbation_and_stability_check() {
    unsafe {
        let mut chain = ptr::null_mut();
        skinlab_chain_uniform(30, 1.0, 1.0, 3.0, &mut chain);
        let mut matrix = ptr::null_mut();
        skinlab_gauge_capacitance(chain, &mut matrix);

        let mut perturbed = ptr::null_mut();
        let mut effective = 0.0;
        let mut warning = true;
        assert_eq!(
            skinlab_matrix_entrywise_perturb(
                matrix, 1e-3, 7, &mut perturbed, &mut effective, &mut warning
            ),
            SkinlabStatus::Ok
        );
        assert!(effective > 0.0 && effective <= 1e-3);
        assert!(!warning);

        let (mut eps, mut dev, mut bound, mut pass) = (0.0, 0.0, 0.0, false);
        assert_eq!(
            skinlab_check_eigenvalue_stability(
                matrix, perturbed, &mut eps, &mut dev, &mut bound, &mut pass
            ),
            SkinlabStatus::Ok
        );
        assert!(pass);
        assert!(dev <= bound + 1e-9);

        let (mut rho, mut ok) = (0.0, false);
        assert_eq!(
            skinlab_decay_condition(2, 0.15, 3.15, 0.001, 50, &mut rho, &mut ok),
            SkinlabStatus::Ok
        );
        assert!(ok && (rho - 0.53162136843171416).abs() < 1e-12);

        skinlab_matrix_free(perturbed);
        skinlab_matrix_free(matrix);
        skinlab_chain_free(chain);
    }
}

#[test]
fn error_paths_return_status_codes() {
    unsafe {
        let mut chain = ptr::null_mut();
        assert_eq!(
            skinlab_chain_uniform(1, 1.0, 1.0, 1.0, &mut chain),
            SkinlabStatus::InvalidArgument
        );
        assert_eq!(
            skinlab_chain_uniform(5, 1.0, 1.0, 1.0, ptr::null_mut()),
            SkinlabStatus::NullPointer
        );
        assert_eq!(skinlab_chain_n(ptr::null()), 0);

        let mut matrix = ptr::null_mut();
        assert_eq!(
            skinlab_corner_toeplitz(2.0, 1.0, -1.0, 1.0, -1.0, 5, &mut matrix),
            SkinlabStatus::InvalidArgument
        );
        assert_eq!(
            skinlab_corner_toeplitz(2.0, -1.0, -1.0, -1.0, -1.0, 5, &mut matrix),
            SkinlabStatus::Ok
        );
        let mut small = [0.0; 2];
        assert_eq!(
            skinlab_matrix_copy_diag(matrix, small.as_mut_ptr(), small.len()),
            SkinlabStatus::BufferTooSmall
        );

        // symmetric matrix, so the spectral norm is defined
        let mut norm = 0.0;
        assert_eq!(skinlab_spectral_norm(matrix, &mut norm), SkinlabStatus::Ok);
        assert!(norm > 0.0);

        let mut out = 0.0;
        assert_eq!(
            skinlab_subwavelength_frequency(-1.0, 1.0, 1e-3, &mut out),
            SkinlabStatus::InvalidArgument
        );
        assert_eq!(
            skinlab_fit_decay_rate(ptr::null(), 4, 1e-13, &mut out),
            SkinlabStatus::NullPointer
        );
        let zeros = [0.0; 4];
        assert_eq!(
            skinlab_localisation_ratio(zeros.as_ptr(), 4, &mut out),
            SkinlabStatus::InvalidArgument
        );

        skinlab_matrix_free(matrix);
        skinlab_chain_free(ptr::null_mut()); // null frees are no-ops
        skinlab_matrix_free(ptr::null_mut());
        skinlab_spectrum_free(ptr::null_mut());
    }
}

#[test]
fn winding_and_interval_through_the_abi() {
    unsafe {
        // gamma = 1 uniform-chain symbol coefficients
        let (alpha, eta, beta) = (
            2.1639534137386528,
            -0.5819767068693264,
            -1.5819767068693264,
        );
        let (mut w, mut boundary, mut dist) = (0i32, false, 0.0);
        assert_eq!(
            skinlab_winding_number(alpha, eta, beta, 0, alpha, 0.0, -1.0, &mut w, &mut boundary, &mut dist),
            SkinlabStatus::Ok
        );
        assert!(!boundary);
        assert_eq!(w, -1);

        assert_eq!(
            skinlab_winding_number(alpha, eta, beta, 0, 0.0, 0.0, -1.0, &mut w, &mut boundary, &mut dist),
            SkinlabStatus::Ok
        );
        assert!(boundary); // lambda_1 = 0 sits on the curve

        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(
            skinlab_protected_interval(alpha, eta, beta, &mut lo, &mut hi),
            SkinlabStatus::Ok
        );
        assert!(lo.abs() < 1e-12);
        assert!((hi - 2.0 * alpha).abs() < 1e-12);
    }
}

/// Compile a small C program against the generated header and the static
/// library, then run it.
#[test]
fn c_program_compiles_links_and_runs() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let lib = manifest.join("../../target/debug/libskinlab_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let c_src = dir.path().join("demo.c");
    std::fs::write(
        &c_src,
        r#"
#include <stdio.h>
#include <stdlib.h>
#include "skinlab.h"

int main(void) {
    SkinlabChain *chain = NULL;
    if (skinlab_chain_uniform(30, 1.0, 1.0, 1.0, &chain) != SKINLAB_STATUS_OK) return 1;
    SkinlabMatrix *matrix = NULL;
    if (skinlab_gauge_capacitance(chain, &matrix) != SKINLAB_STATUS_OK) return 2;
    SkinlabSpectrum *spectrum = NULL;
    if (skinlab_full_spectrum(matrix, &spectrum) != SKINLAB_STATUS_OK) return 3;
    size_t n = skinlab_spectrum_n(spectrum);
    double *eigenvalues = malloc(n * sizeof(double));
    if (skinlab_spectrum_copy_eigenvalues(spectrum, eigenvalues, n) != SKINLAB_STATUS_OK) return 4;
    if (eigenvalues[0] > 1e-10 || eigenvalues[0] < -1e-10) return 5;
    printf("lambda_2 = %.12f\n", eigenvalues[1]);
    free(eigenvalues);
    skinlab_spectrum_free(spectrum);
    skinlab_matrix_free(matrix);
    skinlab_chain_free(chain);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("demo");
    let status = std::process::Command::new("cc")
        .arg(&c_src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");

    let output = std::process::Command::new(&exe).output().unwrap();
    assert!(output.status.success(), "demo exited with {:?}", output.status);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("lambda_2 = 0.2554"), "stdout: {stdout}");
}

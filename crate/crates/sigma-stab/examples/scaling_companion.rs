//! Demonstrates the determinant-side identity: the eigenvalues of the scaled
//! companion matrix `Mbar_0 = I - D^{-1} M` (with `D` the diagonal part of
//! `M`) coincide, as a multiset, with the complex roots of the constant-term
//! polynomial `p_0(sigma) = (-1)^n det(M_sigma)`. Consequently `det(M_sigma)`
//! vanishes exactly at the eigenvalues of `Mbar_0`.

use sigma_stab::eig::{companion_roots, eigenvalues};
use sigma_stab::matcore::{build_mbar0, build_sigma_matrix, Matrix, SigmaValue};
use sigma_stab::sigmacharpoly::coefficient_polynomials;

fn main() {
    let m = Matrix::from_rows(&[
        &[-2.0, 1.0, 1.0],
        &[0.5, -1.0, 2.0],
        &[1.0, 1.5, -3.0],
    ])
    .unwrap();

    let mbar = build_mbar0(&m).unwrap();
    println!("Mbar_0 = I - D^-1 M =");
    for row in mbar.rows() {
        println!("  {:?}", row.iter().map(|v| (v * 1e12).round() / 1e12).collect::<Vec<_>>());
    }

    let mut mbar_eigs = eigenvalues(&mbar).unwrap();
    mbar_eigs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    println!("\neigenvalues of Mbar_0:");
    for z in &mbar_eigs {
        println!("  {:+.10} {:+.10}i", z.re, z.im);
    }

    let cp = coefficient_polynomials(&m);
    let p0 = cp.poly(0);
    let mut p0_roots = companion_roots(p0.coeffs()).unwrap();
    p0_roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    println!("\nroots of p_0(sigma) = {:?}:", p0.coeffs());
    for z in &p0_roots {
        println!("  {:+.10} {:+.10}i", z.re, z.im);
    }

    let worst = mbar_eigs
        .iter()
        .zip(&p0_roots)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max);
    println!("\nworst multiset mismatch: {worst:.3e}");

    // det(M_sigma) vanishes at each real eigenvalue of Mbar_0.
    println!();
    for z in mbar_eigs.iter().filter(|z| z.im.abs() < 1e-9) {
        let msig = build_sigma_matrix(&m, SigmaValue::new(z.re).unwrap());
        println!("det(M_sigma) at sigma = {:+.10}: {:+.3e}", z.re, msig.det_lu());
    }
}

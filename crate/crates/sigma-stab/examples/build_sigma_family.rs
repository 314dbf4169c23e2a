//! Builds the one-parameter family `M_sigma` — the diagonal of `M` scaled
//! by `sigma`, everything else untouched — and walks the spectral abscissa
//! across the parameter range: positive at `sigma = 0` (the family is
//! traceless there), negative once `sigma` clears the Gershgorin threshold.

use sigma_stab::eig::spectral_abscissa;
use sigma_stab::matcore::{build_sigma_matrix, gershgorin_sigma, Matrix, SigmaValue};

fn main() {
    let m = Matrix::from_rows(&[
        &[-2.0, 1.0, 0.5],
        &[1.5, -1.0, 1.0],
        &[0.5, 2.0, -3.0],
    ])
    .unwrap();

    println!("M =");
    for row in m.rows() {
        println!("  {row:?}");
    }

    let gersh = gershgorin_sigma(&m).unwrap();
    println!("\nGershgorin threshold: every disc is left of zero once sigma > {gersh:.6}");

    println!("\n{:>8}  {:>14}  diagonal of M_sigma", "sigma", "abscissa");
    for &sigma in &[0.0, 0.5, 1.0, gersh, gersh + 0.5] {
        let msig = build_sigma_matrix(&m, SigmaValue::new(sigma).unwrap());
        let abscissa = spectral_abscissa(&msig).unwrap();
        let diag: Vec<f64> = msig.diag();
        println!("{sigma:>8.4}  {abscissa:>14.8}  {diag:?}");
    }

    println!(
        "\nThe abscissa starts at a nonnegative value, decreases through zero, \
         and stays negative past the threshold; the crossing point is the \
         stability boundary sigma_star."
    );
}

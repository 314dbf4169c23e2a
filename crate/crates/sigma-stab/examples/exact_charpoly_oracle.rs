//! Pits the numeric coefficient-extraction pipeline against an exact
//! integer-arithmetic expansion of `det(x I - M_sigma)` over all
//! permutations. For integer matrices both routes are exact, so the
//! comparison must come out bitwise — a strong end-to-end check of the
//! recurrence, the interpolation nodes, and the basis conversion.

use sigma_stab::matcore::Matrix;
use sigma_stab::oracle::{leibniz_charpoly_sigma, random_integer_matrix};
use sigma_stab::sigmacharpoly::coefficient_polynomials;

fn main() {
    let m = Matrix::from_rows(&[
        &[-3.0, 2.0, 1.0, 0.0],
        &[1.0, -2.0, 0.0, 2.0],
        &[0.0, 1.0, -4.0, 1.0],
        &[2.0, 0.0, 1.0, -1.0],
    ])
    .unwrap();
    let n = m.n();

    let exact = leibniz_charpoly_sigma(&m).unwrap();
    let numeric = coefficient_polynomials(&m);

    println!("integer matrix, n = {n}: exact expansion vs numeric pipeline\n");
    let mut worst = 0.0_f64;
    for i in 0..=n {
        let want: Vec<f64> = exact.sigma_poly(i).iter().map(|&c| c as f64).collect();
        let got = numeric.poly(i).coeffs();
        let dev = want
            .iter()
            .zip(got.iter().chain(std::iter::repeat(&0.0)))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max);
        worst = worst.max(dev);
        println!("p_{i}: exact {want:?}\n     numeric {got:?}   (deviation {dev:e})");
    }
    println!("\nworst deviation across all coefficients: {worst:e}");

    // The same comparison over a batch of random integer matrices.
    let mut batch_worst = 0.0_f64;
    for seed in 0..100u64 {
        let n = 2 + (seed as usize % 4);
        let m = random_integer_matrix(n, seed, 4);
        let exact = leibniz_charpoly_sigma(&m).unwrap();
        let numeric = coefficient_polynomials(&m);
        for i in 0..=n {
            for (k, &c) in exact.sigma_poly(i).iter().enumerate() {
                batch_worst = batch_worst.max((c as f64 - numeric.poly(i).coeff(k)).abs());
            }
        }
    }
    println!("worst deviation over 100 random integer matrices: {batch_worst:e}");
}

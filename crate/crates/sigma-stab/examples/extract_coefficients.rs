//! Extracts the characteristic-polynomial coefficients of `M_sigma` as
//! polynomials in `sigma` and prints the structural facts that hold for any
//! matrix: the top coefficient is the constant 1, `p_i` has degree at most
//! `n - i` with the `sigma^(n-i-1)` term always missing, its leading
//! coefficient is a signed elementary symmetric sum of the diagonal, and
//! `p_{n-1}` is exactly `(-trace M) * sigma`.

use sigma_stab::matcore::Matrix;
use sigma_stab::sigmacharpoly::{coefficient_polynomials, leading_diagonal_sums};

fn main() {
    let m = Matrix::from_rows(&[
        &[-1.0, 2.0, 0.0, 1.0],
        &[1.0, -2.0, 1.0, 0.0],
        &[0.0, 1.0, -1.0, 2.0],
        &[2.0, 0.0, 1.0, -3.0],
    ])
    .unwrap();
    let n = m.n();

    let cp = coefficient_polynomials(&m);
    println!("det(x I - M_sigma) = sum_i p_i(sigma) x^i, n = {n}\n");
    for i in (0..=n).rev() {
        let p = cp.poly(i);
        println!("p_{i}(sigma): degree {:>2}, coefficients {:?}", p.degree(), p.coeffs());
    }

    // Leading coefficients follow from the diagonal alone: p_i's sigma^(n-i)
    // term is the elementary symmetric sum of the negated diagonal entries.
    let e = leading_diagonal_sums(&m);
    println!("\nelementary symmetric sums of (-diagonal): {e:?}");
    for i in 0..n {
        let lead = cp.poly(i).coeff(n - i);
        println!(
            "p_{i} sigma^{}: computed {lead:>10.6}, from diagonal {:.6}",
            n - i,
            e[n - i - 1]
        );
    }

    // The second-from-top coefficient of each p_i cancels identically.
    println!();
    for i in 0..n.saturating_sub(1) {
        let c = cp.poly(i).coeff(n - i - 1);
        println!("p_{i} sigma^{} term: {c:e} (vanishes identically)", n - i - 1);
    }
}

//! Sweeps `sigma` across a grid and prints, per point, the spectral abscissa
//! of `M_sigma` together with each coefficient value and its sign. Reading
//! down the sign columns shows the mechanism behind the main result: the
//! abscissa's final sign change happens at the largest sigma where a
//! coefficient's sign pattern can still change — its largest real root.

use sigma_stab::eig::spectral_abscissa;
use sigma_stab::matcore::{build_sigma_matrix, Matrix, SigmaValue};
use sigma_stab::sigmacharpoly::coefficient_polynomials;
use sigma_stab::stability::{sign_table, SIGN_ZERO_TOL};

fn main() {
    let m = Matrix::from_rows(&[&[-1.0, 2.0], &[2.0, -1.0]]).unwrap();
    let cp = coefficient_polynomials(&m);
    let n = m.n();

    print!("{:>6} {:>12}", "sigma", "abscissa");
    for i in 0..n {
        print!(" {:>10}", format!("p_{i}"));
    }
    for i in 0..n {
        print!(" {:>7}", format!("sgn p_{i}"));
    }
    println!();

    let (lo, hi, steps) = (0.0, 3.0, 13);
    for k in 0..steps {
        let sigma = lo + (hi - lo) * k as f64 / (steps - 1) as f64;
        let msig = build_sigma_matrix(&m, SigmaValue::new(sigma).unwrap());
        let abscissa = spectral_abscissa(&msig).unwrap();
        let values = cp.eval_at_sigma(sigma);
        let signs = sign_table(&cp, sigma, SIGN_ZERO_TOL);

        print!("{sigma:>6.2} {abscissa:>12.6}");
        for v in values.iter().take(n) {
            print!(" {v:>10.4}");
        }
        for s in signs.iter().take(n) {
            print!(" {:>7}", s.to_string());
        }
        println!();
    }

    println!(
        "\np_0 = sigma^2 - 4 flips sign at sigma = 2, exactly where the \
         abscissa 2 - sigma crosses zero."
    );
}

//! Finds all real roots of a polynomial with multiplicities: a square-free
//! factor is split off via the derivative-gcd chain, roots are isolated by
//! Sturm sign-variation counts, then each bracket is sharpened by bisection
//! with a Newton polish. The demonstration plants roots (one of them
//! repeated), recovers them, and shows how complex factors are ignored.

use sigma_stab::upoly::RealPoly;

fn main() {
    // (x + 2)^2 (x - 1) (x - 3.5): a double root among simple ones.
    let planted = RealPoly::from_roots(&[-2.0, -2.0, 1.0, 3.5]);
    println!("coefficients: {:?}", planted.coeffs());
    println!("Descartes sign changes (positive-root bound): {}", planted.descartes_sign_changes());

    let roots = planted.real_roots(1e-12).unwrap();
    println!("\n{:>12}  {:>4}  {:>12}", "root", "mult", "|p(root)|");
    for r in &roots.roots {
        println!("{:>12.8}  {:>4}  {:>12.3e}", r.value, r.multiplicity, r.residual);
    }

    // Mixed real/complex: (x^2 + 1)(x^2 + x - 6) has real roots only at
    // -3 and 2; the complex pair contributes nothing.
    let mixed = &RealPoly::new(vec![1.0, 0.0, 1.0]) * &RealPoly::new(vec![-6.0, 1.0, 1.0]);
    let found = mixed.real_roots(1e-12).unwrap();
    println!(
        "\n(x^2 + 1)(x^2 + x - 6): real roots {:?}, max root {:?}",
        found.values(),
        found.max_root()
    );

    // No real roots at all: the root list is empty, not an error.
    let rootless = RealPoly::new(vec![4.0, 0.0, 1.0]);
    println!("x^2 + 4: real roots {:?}", rootless.real_roots(1e-12).unwrap().values());
}

//! Property-based invariants over randomized inputs: the interpolation
//! pipeline against direct evaluation, polynomial algebra round trips, and
//! the spectral/root-set relationships that must hold for every matrix with
//! a negative diagonal.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use sigma_stab::eig;
use sigma_stab::matcore::{build_sigma_matrix, gershgorin_sigma, Matrix, SigmaValue};
use sigma_stab::sigmacharpoly::{charpoly_at, coefficient_polynomials, leading_diagonal_sums};
use sigma_stab::stability::{analyze, AnalyzeOptions};
use sigma_stab::upoly::RealPoly;

prop_compose! {
    /// Dense matrix with off-diagonal entries in [-2, 2] and diagonal in
    /// [-3, -0.3], the regime where the stability threshold exists.
    fn neg_diag_matrix(max_n: usize)
        (n in 2..=max_n)
        (off in prop::collection::vec(-2.0..2.0f64, n * n),
         diag in prop::collection::vec(0.3..3.0f64, n),
         n in Just(n))
        -> Matrix
    {
        let mut entries = off;
        for i in 0..n {
            entries[i * n + i] = -diag[i];
        }
        Matrix::from_flat(n, entries).unwrap()
    }
}

/// Sorted, pairwise-separated root sets that refinement must recover.
fn separated_roots() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0..5.0f64, 1..=5)
        .prop_map(|mut v| {
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        })
        .prop_filter("roots separated", |v| v.windows(2).all(|w| w[1] - w[0] >= 0.2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interpolated_coefficients_reproduce_samples(
        m in neg_diag_matrix(5),
        s in -1.0..4.0f64,
    ) {
        let cp = coefficient_polynomials(&m);
        let direct = charpoly_at(&m, SigmaValue::new(s).unwrap());
        let interp = cp.eval_at_sigma(s);
        for (a, b) in direct.iter().zip(&interp) {
            prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{a} vs {b} at sigma {s}");
        }
    }

    #[test]
    fn trace_coefficient_is_linear(m in neg_diag_matrix(6)) {
        let n = m.n();
        let cp = coefficient_polynomials(&m);
        let e = leading_diagonal_sums(&m);
        let p = cp.poly(n - 1);
        prop_assert!(p.degree() <= 1);
        assert_abs_diff_eq!(p.coeff(0), 0.0, epsilon = 1e-10 * e[0].abs().max(1.0));
        assert_abs_diff_eq!(p.coeff(1), e[0], epsilon = 1e-10 * e[0].abs().max(1.0));
    }

    #[test]
    fn planted_roots_are_recovered(roots in separated_roots()) {
        let p = RealPoly::from_roots(&roots);
        let found = p.real_roots(1e-10).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (got, want) in found.values().iter().zip(&roots) {
            prop_assert!((got - want).abs() <= 1e-7, "{got} vs {want}");
        }
    }

    #[test]
    fn division_reconstructs(
        a in prop::collection::vec(-3.0..3.0f64, 1..=7),
        b in prop::collection::vec(-3.0..3.0f64, 1..=4),
    ) {
        let pa = RealPoly::new(a);
        let pb = RealPoly::new(b);
        prop_assume!(!pb.is_zero());
        prop_assume!(pb.leading_coeff().abs() >= 0.1);
        let (q, r) = pa.div_rem(&pb);
        prop_assert!(r.is_zero() || r.degree() < pb.degree());
        let back = &(&q * &pb) + &r;
        let scale = pa.coeffs().iter().fold(1.0_f64, |m, c| m.max(c.abs()));
        for k in 0..=pa.degree().max(back.degree()) {
            prop_assert!((pa.coeff(k) - back.coeff(k)).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn descartes_bounds_positive_roots(roots in separated_roots()) {
        let p = RealPoly::from_roots(&roots);
        let positive = roots.iter().filter(|&&r| r > 0.0).count();
        let changes = p.descartes_sign_changes();
        prop_assert!(changes >= positive);
        prop_assert_eq!(changes % 2, positive % 2);
    }

    #[test]
    fn eigenvalue_sum_matches_trace(m in neg_diag_matrix(6)) {
        let eigs = eig::eigenvalues(&m).unwrap();
        let sum: f64 = eigs.iter().map(|z| z.re).sum();
        assert_abs_diff_eq!(sum, m.trace(), epsilon = 1e-8 * m.trace().abs().max(1.0));
        let im: f64 = eigs.iter().map(|z| z.im).sum();
        assert_abs_diff_eq!(im, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn abscissa_negative_beyond_gershgorin(m in neg_diag_matrix(5)) {
        let g = gershgorin_sigma(&m).unwrap();
        let msig = build_sigma_matrix(&m, SigmaValue::new(g + 0.1).unwrap());
        let abscissa = eig::spectral_abscissa(&msig).unwrap();
        prop_assert!(abscissa < 0.0, "abscissa {abscissa} at sigma = gershgorin + 0.1");
    }

    #[test]
    fn sigma_matrix_scales_only_the_diagonal(m in neg_diag_matrix(5), s in -2.0..3.0f64) {
        let msig = build_sigma_matrix(&m, SigmaValue::new(s).unwrap());
        let n = m.n();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { s * m.get(i, i) } else { m.get(i, j) };
                prop_assert_eq!(msig.get(i, j), want);
            }
        }
    }

    #[test]
    fn matrix_json_round_trips_bitwise(m in neg_diag_matrix(6)) {
        let back = Matrix::from_json_str(&m.to_json_string()).unwrap();
        prop_assert_eq!(m.as_slice(), back.as_slice());
    }
}

proptest! {
    // analyze runs eigensolves inside bisection; keep the case count modest.
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn max_omega_never_exceeds_sigma_star(m in neg_diag_matrix(5)) {
        let r = analyze(&m, &AnalyzeOptions::default()).unwrap();
        if let Some(mx) = r.omega.max {
            let tol = 1e-6 * r.sigma_star.abs().max(1.0);
            prop_assert!(
                mx <= r.sigma_star + tol,
                "max(Omega) = {mx} above sigma_star = {}",
                r.sigma_star
            );
        }
        prop_assert!(r.sigma_star >= 0.0);
        prop_assert!(r.sign_changes_verified);
    }
}

//! Acceptance suite: ten numbered criteria covering the closed-form
//! fixtures, oracle agreement, the theorem cross-checks on a shared random
//! ensemble, structural invariants, eigenvalue identities, and the CLI
//! surface. Each test prints one `[criterion N] PASS` line (visible with
//! `--nocapture`); a failing criterion panics with context.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;

use sigma_stab::eig;
use sigma_stab::matcore::{build_mbar0, build_sigma_matrix, gershgorin_sigma, Matrix, SigmaValue};
use sigma_stab::oracle::{
    grid_scan_crossing, leibniz_charpoly_sigma, random_integer_matrix, random_matrix,
};
use sigma_stab::sigmacharpoly::{coefficient_polynomials, leading_diagonal_sums, SigmaCharPoly};
use sigma_stab::stability::{
    analyze, omega_set, verify_sign_changes, AnalyzeOptions, Crossing, OmegaSet, StabilityReport,
};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn pass(criterion: usize, msg: &str) {
    println!("[criterion {criterion}] PASS: {msg}");
}

fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (tol {tol})"
    );
}

fn assert_poly(cp: &SigmaCharPoly, i: usize, want: &[f64], tol: f64) {
    for (k, &w) in want.iter().enumerate() {
        assert_close(cp.poly(i).coeff(k), w, tol, &format!("p_{i} coeff of sigma^{k}"));
    }
    assert!(cp.poly(i).degree() < want.len(), "p_{i} degree too high");
}

// ── shared random ensemble ──────────────────────────────────────────

struct Case {
    m: Matrix,
    cp: SigmaCharPoly,
    omega: OmegaSet,
    report: StabilityReport,
}

const ENSEMBLE_SIZE: u64 = 500;

static ENSEMBLE: OnceLock<Vec<Case>> = OnceLock::new();

/// 500 matrices, dimensions cycling 2..=8, negative diagonals, analyzed
/// once and shared by every ensemble-based criterion.
fn ensemble() -> &'static [Case] {
    ENSEMBLE.get_or_init(|| {
        (0..ENSEMBLE_SIZE)
            .map(|seed| {
                let n = 2 + (seed % 7) as usize;
                let m = random_matrix(n, seed);
                let cp = coefficient_polynomials(&m);
                let omega = omega_set(&cp, 1e-10)
                    .unwrap_or_else(|e| panic!("omega failed for seed {seed}: {e}"));
                let report = analyze(&m, &AnalyzeOptions::default())
                    .unwrap_or_else(|e| panic!("analyze failed for seed {seed}: {e}"));
                Case { m, cp, omega, report }
            })
            .collect()
    })
}

// ── criterion 1: symmetric 2x2 fixture, real crossing ───────────────

#[test]
fn criterion_01_symmetric_fixture_closed_forms() {
    let m = Matrix::read_from_path(&fixture("fixture_a.csv")).unwrap();
    let cp = coefficient_polynomials(&m);
    assert_poly(&cp, 0, &[-4.0, 0.0, 1.0], 1e-9); // sigma^2 - 4
    assert_poly(&cp, 1, &[0.0, 2.0], 1e-9); // 2 sigma

    let r = analyze(&m, &AnalyzeOptions::default()).unwrap();
    assert_close(r.sigma_star, 2.0, 1e-8, "sigma_star");
    assert_eq!(r.crossing, Crossing::Real);
    assert!(r.theorem2.applies && r.theorem2.holds);
    assert!(r.theorem2.residual <= 1e-8, "residual {}", r.theorem2.residual);
    assert_close(r.gershgorin, 2.0, 0.0, "gershgorin threshold");

    // Mbar0 = [[0,2],[2,0]]: eigenvalues {-2, 2}, matching the roots of p_0.
    let mbar0 = build_mbar0(&m).unwrap();
    let mut eigs = eig::eigenvalues(&mbar0).unwrap();
    eigs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    assert_close(eigs[0].re, -2.0, 1e-8, "mbar0 eig 0");
    assert_close(eigs[1].re, 2.0, 1e-8, "mbar0 eig 1");
    assert!(eigs.iter().all(|z| z.im.abs() <= 1e-8));
    assert!(r.scaling.holds && r.scaling.p0_root_match_residual <= 1e-8);

    pass(1, &format!(
        "p_0 = sigma^2 - 4, p_1 = 2 sigma; sigma_star = {:.10} (real crossing), \
         theorem2 residual {:.2e}, eig(Mbar0) = {{-2, 2}}, gershgorin = 2",
        r.sigma_star, r.theorem2.residual
    ));
}

// ── criterion 2: rotational 2x2 fixture, complex-pair crossing ──────

#[test]
fn criterion_02_rotational_fixture_complex_crossing() {
    let m = Matrix::read_from_path(&fixture("fixture_b.json")).unwrap();
    let cp = coefficient_polynomials(&m);
    assert_poly(&cp, 0, &[4.0, 0.0, 1.0], 1e-9); // sigma^2 + 4
    assert!(cp.poly(0).real_roots(1e-10).unwrap().is_empty(), "p_0 must have no real roots");

    let r = analyze(&m, &AnalyzeOptions::default()).unwrap();
    assert_close(r.sigma_star, 0.0, 1e-8, "sigma_star");
    assert_eq!(r.crossing, Crossing::ComplexPair);
    assert_close(r.omega.max.unwrap(), 0.0, 1e-9, "max(Omega)");
    assert!(r.corollary.applies && r.corollary.holds);
    assert!(r.corollary.slack.abs() <= 1e-8, "slack {}", r.corollary.slack);

    // Leading pair at the crossing is +-2i.
    assert_eq!(r.leading_eigenvalues.len(), 2);
    for z in &r.leading_eigenvalues {
        assert!(z.re.abs() <= 1e-6 && (z.im.abs() - 2.0).abs() <= 1e-6, "leading {z:?}");
    }

    // Mbar0 = [[0,-2],[2,0]]: eigenvalue multiset {2i, -2i}.
    let mbar0 = build_mbar0(&m).unwrap();
    let mut eigs = eig::eigenvalues(&mbar0).unwrap();
    eigs.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
    assert!(eigs[0].re.abs() <= 1e-8 && (eigs[0].im + 2.0).abs() <= 1e-8);
    assert!(eigs[1].re.abs() <= 1e-8 && (eigs[1].im - 2.0).abs() <= 1e-8);

    pass(2, &format!(
        "p_0 = sigma^2 + 4 (no real roots), sigma_star = {:.2e}, complex pair +-2i, \
         slack = {:.2e}, eig(Mbar0) = {{+-2i}}",
        r.sigma_star, r.corollary.slack
    ));
}

// ── criterion 3: diagonal fixture, exact coefficients ───────────────

#[test]
fn criterion_03_diagonal_fixture_exact_coefficients() {
    let m = Matrix::read_from_path(&fixture("fixture_c.json")).unwrap();
    let cp = coefficient_polynomials(&m);
    assert_poly(&cp, 0, &[0.0, 0.0, 0.0, 6.0], 1e-9); // 6 sigma^3
    assert_poly(&cp, 1, &[0.0, 0.0, 11.0], 1e-9); // 11 sigma^2
    assert_poly(&cp, 2, &[0.0, 6.0], 1e-9); // 6 sigma
    assert_poly(&cp, 3, &[1.0], 1e-9);

    // Integer inputs at integer nodes: the pipeline is exact, not just close.
    assert_eq!(cp.poly(0).coeffs(), &[0.0, 0.0, 0.0, 6.0]);
    assert_eq!(cp.poly(1).coeffs(), &[0.0, 0.0, 11.0]);
    assert_eq!(cp.poly(2).coeffs(), &[0.0, 6.0]);
    assert_eq!(cp.poly(3).coeffs(), &[1.0]);
    assert_eq!(leading_diagonal_sums(&m), vec![6.0, 11.0, 6.0]);

    let r = analyze(&m, &AnalyzeOptions::default()).unwrap();
    assert_close(r.sigma_star, 0.0, 1e-8, "sigma_star");
    assert!(r.all_checks_hold());

    pass(3, "coefficients exactly (6 sigma^3, 11 sigma^2, 6 sigma, 1); sigma_star = 0");
}

// ── criterion 4: exact permutation-expansion oracle agreement ───────

#[test]
fn criterion_04_integer_matrices_match_exact_expansion() {
    let mut checked = 0usize;
    let mut max_diff = 0.0_f64;
    for seed in 0..200u64 {
        let n = 1 + (seed % 5) as usize; // 1..=5
        let m = random_integer_matrix(n, seed, 4);
        let exact = leibniz_charpoly_sigma(&m)
            .unwrap_or_else(|e| panic!("oracle failed for seed {seed}: {e}"));
        let cp = coefficient_polynomials(&m);
        for i in 0..=n {
            let want = exact.sigma_poly(i);
            let deg = cp.poly(i).degree();
            assert!(deg < want.len() || want.iter().skip(deg + 1).all(|&w| w == 0));
            for (j, &w) in want.iter().enumerate() {
                let diff = (cp.poly(i).coeff(j) - w as f64).abs();
                assert!(
                    diff <= 1e-9,
                    "seed {seed} n {n}: p_{i} sigma^{j} differs by {diff}"
                );
                max_diff = max_diff.max(diff);
            }
        }
        checked += 1;
    }
    pass(4, &format!(
        "{checked} integer matrices (n <= 5, entries in [-4,4]) match the \
         permutation expansion; worst coefficient deviation {max_diff:.2e}"
    ));
}

// ── criterion 5: real crossings hit max(Omega) across the ensemble ──

#[test]
fn criterion_05_real_crossings_equal_max_omega() {
    let cases = ensemble();
    let mut real_cases = 0usize;
    let mut worst = 0.0_f64;
    for (k, case) in cases.iter().enumerate() {
        if case.report.crossing != Crossing::Real {
            continue;
        }
        real_cases += 1;
        let sigma_star = case.report.sigma_star;
        let mx = case.report.omega.max.unwrap_or_else(|| {
            panic!("case {k}: real crossing with empty Omega")
        });
        let residual = (sigma_star - mx).abs();
        let tol = 1e-6 * sigma_star.abs().max(1.0);
        assert!(
            residual <= tol,
            "case {k} (n = {}): |sigma_star - max(Omega)| = {residual} > {tol}",
            case.report.n
        );
        worst = worst.max(residual);
    }
    assert!(real_cases >= 100, "ensemble produced only {real_cases} real crossings");
    pass(5, &format!(
        "{real_cases}/{} real crossings all satisfy max(Omega) = sigma_star; \
         worst residual {worst:.2e}",
        cases.len()
    ));
}

// ── criterion 6: complex crossings bounded below by max(Omega) ──────

#[test]
fn criterion_06_complex_crossings_bound_max_omega() {
    let cases = ensemble();
    let mut complex_cases = 0usize;
    let mut widest = 0.0_f64;
    for (k, case) in cases.iter().enumerate() {
        if case.report.crossing != Crossing::ComplexPair {
            continue;
        }
        complex_cases += 1;
        let sigma_star = case.report.sigma_star;
        if let Some(mx) = case.report.omega.max {
            assert!(
                mx <= sigma_star + 1e-6,
                "case {k} (n = {}): max(Omega) = {mx} exceeds sigma_star = {sigma_star}",
                case.report.n
            );
            widest = widest.max(sigma_star - mx);
        }
    }
    assert!(complex_cases >= 50, "ensemble produced only {complex_cases} complex crossings");

    // Persisted strict-gap witness: the bound holds with real slack, so no
    // real-root information alone could pin down sigma_star.
    let m = Matrix::read_from_path(&fixture("corollary_strict_slack.json")).unwrap();
    let r = analyze(&m, &AnalyzeOptions::default()).unwrap();
    assert_eq!(r.crossing, Crossing::ComplexPair, "witness crossing");
    assert!(r.corollary.applies && r.corollary.holds);
    assert!(
        r.corollary.slack.is_finite() && r.corollary.slack > 1e-3,
        "witness slack {} not strict",
        r.corollary.slack
    );

    pass(6, &format!(
        "{complex_cases}/{} complex crossings all satisfy max(Omega) <= sigma_star \
         (widest ensemble gap {widest:.3}); persisted witness has slack {:.3}",
        cases.len(),
        r.corollary.slack
    ));
}

// ── criterion 7: sign patterns of the coefficient polynomials ───────

#[test]
fn criterion_07_sign_alternation_and_positivity() {
    let cases = ensemble();
    for (k, case) in cases.iter().enumerate() {
        let n = case.m.n();
        // (a) midpoint sign alternation against root parities.
        assert!(
            verify_sign_changes(&case.cp, &case.omega),
            "case {k}: sign pattern inconsistent with computed roots"
        );

        // (b) negative diagonal makes every leading coefficient e_{n-i}
        // positive, so each p_i is positive beyond its own largest root.
        for i in 0..=n {
            let p = case.cp.poly(i);
            if p.is_constant() {
                continue;
            }
            assert!(p.leading_coeff() > 0.0, "case {k}: p_{i} leading coeff not positive");
            match case.omega.per_coefficient[i].max_root() {
                Some(r) => {
                    for d in [1e-3, 1.0, 10.0] {
                        assert!(
                            p.eval(r + d) > 0.0,
                            "case {k}: p_{i}({}) not positive beyond max root",
                            r + d
                        );
                    }
                }
                None => {
                    for x in [-10.0, 0.0, 10.0] {
                        assert!(p.eval(x) > 0.0, "case {k}: rootless p_{i}({x}) not positive");
                    }
                }
            }
        }

        // (c) above max(Omega) the whole sign table is positive.
        let mx = case.omega.max.expect("Omega always contains 0 via p_{n-1}");
        for s in [mx + 1e-6, mx + 1.0] {
            for i in 0..=n {
                assert!(
                    case.cp.poly(i).eval(s) > 0.0,
                    "case {k}: p_{i}({s}) not positive above max(Omega) = {mx}"
                );
            }
        }
    }
    pass(7, &format!(
        "{} cases: sign alternation matches root parity; all p_i positive beyond \
         their largest root and jointly positive above max(Omega) + 1e-6",
        cases.len()
    ));
}

// ── criterion 8: structural invariants of the coefficients ──────────

#[test]
fn criterion_08_structural_invariants() {
    let cases = ensemble();
    for (k, case) in cases.iter().enumerate() {
        let n = case.m.n();
        let e = leading_diagonal_sums(&case.m);

        // monic p_n
        assert_eq!(case.cp.poly(n).coeffs(), &[1.0], "case {k}: p_n not exactly 1");
        for i in 0..n {
            let p = case.cp.poly(i);
            let scale = p.coeffs().iter().fold(1.0_f64, |m, c| m.max(c.abs()));
            // degree bound
            assert!(p.degree() <= n - i, "case {k}: deg p_{i} = {} > {}", p.degree(), n - i);
            // vanishing sigma^{n-i-1} coefficient
            if n - i >= 1 {
                let c = p.coeff(n - i - 1);
                assert!(
                    c.abs() <= 1e-9 * scale,
                    "case {k}: p_{i} sigma^{} coeff = {c} (scale {scale})",
                    n - i - 1
                );
            }
            // leading coefficient is e_{n-i}
            let lead = p.coeff(n - i);
            let want = e[n - i - 1];
            assert!(
                (lead - want).abs() <= 1e-9 * want.abs().max(1.0),
                "case {k}: p_{i} leading {lead} vs e_{} = {want}",
                n - i
            );
        }

        // p_0(sigma) = (-1)^n det(M_sigma) at spot-check points; 1e-7
        // relative absorbs the equispaced-interpolation conditioning at
        // n = 8 (exactness itself is pinned by the integer oracle).
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let g = gershgorin_sigma(&case.m).unwrap();
        for s in [0.37, 1.0, g.max(0.1)] {
            let det = build_sigma_matrix(&case.m, SigmaValue::new(s).unwrap()).det_lu();
            let want = sign * det;
            let got = case.cp.poly(0).eval(s);
            assert!(
                (got - want).abs() <= 1e-7 * want.abs().max(1.0),
                "case {k}: p_0({s}) = {got} vs (-1)^n det = {want}"
            );
        }
    }
    pass(8, &format!(
        "{} cases: p_n = 1, degree bounds, vanishing sigma^(n-i-1) terms, \
         leading coefficients e_(n-i), and p_0 = (-1)^n det(M_sigma) all hold",
        cases.len()
    ));
}

// ── criterion 9: eigenvalue identities and bisection vs grid scan ───

#[test]
fn criterion_09_eigen_identities_and_scan_agreement() {
    // trace / determinant identities up to n = 20
    for &n in &[2usize, 5, 8, 12, 16, 20] {
        for seed in 0..5u64 {
            let m = random_matrix(n, 1000 + seed * 31 + n as u64);
            let eigs = eig::eigenvalues(&m).unwrap();
            let sum_re: f64 = eigs.iter().map(|z| z.re).sum();
            let sum_im: f64 = eigs.iter().map(|z| z.im).sum();
            let trace = m.trace();
            assert!(
                (sum_re - trace).abs() <= 1e-8 * trace.abs().max(1.0) && sum_im.abs() <= 1e-8,
                "n {n} seed {seed}: eig sum {sum_re}+{sum_im}i vs trace {trace}"
            );
            let prod = eigs.iter().fold(num_complex::Complex64::new(1.0, 0.0), |a, z| a * z);
            let det = m.det_lu();
            assert!(
                (prod.re - det).abs() <= 1e-6 * det.abs().max(1.0)
                    && prod.im.abs() <= 1e-6 * det.abs().max(1.0),
                "n {n} seed {seed}: eig product {prod} vs det {det}"
            );
        }
    }

    // bisection agrees with a brute-force grid scan
    let mut scanned = 0usize;
    for case in ensemble() {
        if case.report.sigma_star <= 0.05 {
            continue;
        }
        let hi = case.report.gershgorin + 1.0;
        let steps = 64;
        let spacing = hi / (steps - 1) as f64;
        let scan = grid_scan_crossing(&case.m, 0.0, hi, steps)
            .unwrap()
            .expect("crossing must lie inside [0, gershgorin + 1]");
        assert!(
            (scan - case.report.sigma_star).abs() <= 2.0 * spacing,
            "scan {scan} vs bisection {} (spacing {spacing})",
            case.report.sigma_star
        );
        scanned += 1;
        if scanned >= 20 {
            break;
        }
    }
    assert!(scanned >= 20, "only {scanned} scan comparisons ran");

    pass(9, &format!(
        "trace/determinant identities hold up to n = 20; bisection agrees with \
         the grid scan on {scanned} matrices within two grid cells"
    ));
}

// ── criterion 10: CLI end-to-end ────────────────────────────────────

#[test]
fn criterion_10_cli_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_sigma-stab");

    // analyze fixture A: exit 0, JSON payload with the known threshold
    let out = Command::new(bin)
        .args(["analyze", fixture("fixture_a.csv").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["crossing"], "real");
    assert!((doc["sigma_star"].as_f64().unwrap() - 2.0).abs() <= 1e-8);
    assert_eq!(doc["all_checks_hold"], true);

    // analyze fixture B: complex pair
    let out = Command::new(bin)
        .args(["analyze", fixture("fixture_b.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["crossing"], "complex_pair");
    assert!(doc["sigma_star"].as_f64().unwrap().abs() <= 1e-8);

    // analyze fixture C: exit 0
    let out = Command::new(bin)
        .args(["analyze", fixture("fixture_c.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // impossible tolerance: the run completes but the identity check fails
    // numerically, which must surface as exit code 2
    let out = Command::new(bin)
        .args([
            "analyze",
            fixture("fixture_a.csv").to_str().unwrap(),
            "--theorem-tol",
            "1e-18",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "tightened tolerance must exit 2");

    // invalid input: exit 1
    let out = Command::new(bin).args(["analyze", "no-such-file.csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // sweep fixture A over [0, 4] with 5 points: closed-form rows
    let out = Command::new(bin)
        .args([
            "sweep",
            fixture("fixture_a.csv").to_str().unwrap(),
            "--sigma-min",
            "0",
            "--sigma-max",
            "4",
            "--steps",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "sigma,abscissa,p_0,p_1,sign_0,sign_1");
    let want = [
        (0.0, 2.0, -4.0),
        (1.0, 1.0, -3.0),
        (2.0, 0.0, 0.0),
        (3.0, -1.0, 5.0),
        (4.0, -2.0, 12.0),
    ];
    assert_eq!(lines.len(), 1 + want.len());
    for (line, (sig, absc, p0)) in lines[1..].iter().zip(want) {
        let cols: Vec<f64> = line.split(',').take(4).map(|c| c.parse().unwrap()).collect();
        assert_close(cols[0], sig, 1e-9, "sweep sigma");
        assert_close(cols[1], absc, 1e-9, "sweep abscissa");
        assert_close(cols[2], p0, 1e-9, "sweep p_0");
    }

    pass(10, "analyze exits 0/2/1 as specified on fixtures; sweep reproduces the closed-form table");
}

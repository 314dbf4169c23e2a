//! Independent reference implementations used to validate the production
//! pipeline, plus deterministic test-matrix generators.
//!
//! Nothing here shares an algorithm with the modules it checks:
//!
//! - [`leibniz_charpoly_sigma`] expands `det(x I - M_sigma)` literally over
//!   all `n!` permutations in exact `i128` arithmetic (integer matrices,
//!   `n <= 6`), giving bit-exact coefficient polynomials to compare against
//!   the Faddeev-LeVerrier + interpolation pipeline;
//! - [`grid_scan_crossing`] locates the spectral-abscissa sign change by
//!   brute-force sampling, as a sanity bound on the bisection result;
//! - [`random_matrix`] / [`random_integer_matrix`] derive matrices from a
//!   `u64` seed through a fixed, documented scheme, so every test ensemble
//!   is reproducible from its seed alone.

use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::eig::{self, EigError};
use crate::matcore::Matrix;

/// Leibniz expansion is factorial in `n`; above this it is pointless.
pub const LEIBNIZ_MAX_N: usize = 6;
/// Entry magnitude cap that keeps every `i128` product far from overflow
/// (worst case `(10^4)^6` per term across `720` terms).
pub const LEIBNIZ_MAX_ENTRY: f64 = 1e4;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    /// Dimension exceeds the permutation-expansion cap.
    TooLarge { n: usize, max: usize },
    /// Entry is not an exact integer.
    NonIntegerEntry { row: usize, col: usize },
    /// Entry magnitude exceeds the overflow-safe cap.
    EntryOutOfRange { row: usize, col: usize, max: f64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { n, max } => {
                write!(f, "exact expansion supports n <= {max}, got {n}")
            }
            OracleError::NonIntegerEntry { row, col } => {
                write!(f, "entry at row {row}, column {col} is not an integer")
            }
            OracleError::EntryOutOfRange { row, col, max } => {
                write!(f, "entry at row {row}, column {col} exceeds |{max}|")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// A bivariate integer polynomial in `(x, sigma)`, dense storage:
/// `coeff[i][j]` multiplies `x^i sigma^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly {
    coeff: Vec<Vec<i128>>,
}

impl BiPoly {
    /// Coefficient of `x^xpow sigma^spow` (zero outside the stored grid).
    pub fn coeff(&self, xpow: usize, spow: usize) -> i128 {
        self.coeff
            .get(xpow)
            .and_then(|row| row.get(spow))
            .copied()
            .unwrap_or(0)
    }

    /// The exact coefficient polynomial `p_i(sigma)` as ascending integer
    /// coefficients, trailing zeros trimmed (a zero polynomial is `[0]`).
    pub fn sigma_poly(&self, i: usize) -> Vec<i128> {
        let mut row = self.coeff[i].clone();
        while row.len() > 1 && *row.last().unwrap() == 0 {
            row.pop();
        }
        row
    }

    /// Degree in `x` (the matrix dimension).
    pub fn xdeg(&self) -> usize {
        self.coeff.len() - 1
    }
}

/// Exact `det(x I - M_sigma)` for an integer matrix, expanded over all
/// permutations with Heap's algorithm (each swap is a transposition, so the
/// permutation sign just alternates).
///
/// Per permutation, non-fixed points contribute the scalar `prod -m[i][pi(i)]`
/// and fixed points the product of binomials `(x - m[i][i] sigma)`, expanded
/// by convolution. Everything stays in `i128`.
pub fn leibniz_charpoly_sigma(m: &Matrix) -> Result<BiPoly, OracleError> {
    let n = m.n();
    if n > LEIBNIZ_MAX_N {
        return Err(OracleError::TooLarge { n, max: LEIBNIZ_MAX_N });
    }
    let mut entries = vec![0i128; n * n];
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j);
            if v.fract() != 0.0 {
                return Err(OracleError::NonIntegerEntry { row: i + 1, col: j + 1 });
            }
            if v.abs() > LEIBNIZ_MAX_ENTRY {
                return Err(OracleError::EntryOutOfRange {
                    row: i + 1,
                    col: j + 1,
                    max: LEIBNIZ_MAX_ENTRY,
                });
            }
            entries[i * n + j] = v as i128;
        }
    }

    let mut acc = vec![vec![0i128; n + 1]; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign: i128 = 1;
    let mut c = vec![0usize; n];

    accumulate_term(&mut acc, &perm, sign, &entries, n);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            accumulate_term(&mut acc, &perm, sign, &entries, n);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(BiPoly { coeff: acc })
}

fn accumulate_term(
    acc: &mut [Vec<i128>],
    perm: &[usize],
    sign: i128,
    entries: &[i128],
    n: usize,
) {
    // Scalar part: off-diagonal picks contribute -m[i][perm[i]].
    let mut scalar = sign;
    let mut fixed: Vec<i128> = Vec::new();
    for i in 0..n {
        let j = perm[i];
        if j == i {
            fixed.push(entries[i * n + i]);
        } else {
            let v = entries[i * n + j];
            if v == 0 {
                return;
            }
            scalar *= -v;
        }
    }
    // Binomial part: prod over fixed points of (x - m_ii sigma).
    // expand[k][l] after processing: coefficient of x^k sigma^l.
    let mut expand = vec![vec![0i128; fixed.len() + 1]; fixed.len() + 1];
    expand[0][0] = 1;
    for (step, &d) in fixed.iter().enumerate() {
        for k in (0..=step + 1).rev() {
            for l in (0..=step + 1).rev() {
                let mut v = 0i128;
                if k > 0 {
                    v += expand[k - 1][l];
                }
                if l > 0 {
                    v += -d * expand[k][l - 1];
                }
                expand[k][l] = v;
            }
        }
    }
    for (k, row) in expand.iter().enumerate() {
        for (l, &v) in row.iter().enumerate() {
            if v != 0 {
                acc[k][l] += scalar * v;
            }
        }
    }
}

/// Brute-force locator for the stability threshold: samples the spectral
/// abscissa of `M_sigma` at `steps` equispaced points on `[lo, hi]`
/// (spacing `(hi - lo) / (steps - 1)`), scans from the top for the first
/// cell whose abscissa goes from `>= 0` to `< 0`, and returns its midpoint.
///
/// `None` when the abscissa never crosses inside the range — already
/// negative at `lo`, or still nonnegative at `hi`.
pub fn grid_scan_crossing(
    m: &Matrix,
    lo: f64,
    hi: f64,
    steps: usize,
) -> Result<Option<f64>, EigError> {
    assert!(steps >= 2, "grid scan needs at least 2 points");
    assert!(hi > lo, "empty scan range");
    let spacing = (hi - lo) / (steps - 1) as f64;
    let mut absc = Vec::with_capacity(steps);
    for k in 0..steps {
        let s = lo + spacing * k as f64;
        let msig = crate::matcore::build_sigma_matrix(
            m,
            crate::matcore::SigmaValue::new(s).expect("grid point is finite"),
        );
        absc.push(eig::spectral_abscissa(&msig)?);
    }
    for k in (0..steps - 1).rev() {
        if absc[k] >= 0.0 && absc[k + 1] < 0.0 {
            return Ok(Some(lo + spacing * (k as f64 + 0.5)));
        }
    }
    Ok(None)
}

/// `[0, 1)` from the top 53 bits of a `u64` draw.
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Deterministic dense matrix with strictly negative diagonal.
///
/// Scheme (fixed; fixtures depend on it): `ChaCha8Rng::seed_from_u64(seed)`,
/// entries drawn row-major; off-diagonal uniform on `[-2, 2]`, diagonal
/// uniform on `[-3, -0.5]`, each from one `u64` mapped through its top 53
/// bits.
pub fn random_matrix(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let u = unit_f64(&mut rng);
            let v = if i == j { -3.0 + u * 2.5 } else { -2.0 + u * 4.0 };
            entries.push(v);
        }
    }
    Matrix::from_flat(n, entries).expect("generated entries are finite")
}

/// Deterministic integer matrix, entries uniform on `{-max_abs, ..., max_abs}`,
/// same seeding and draw order as [`random_matrix`].
pub fn random_integer_matrix(n: usize, seed: u64, max_abs: i64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = (2 * max_abs + 1) as f64;
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let u = unit_f64(&mut rng);
        let v = (-max_abs as f64 + (u * span).floor()).min(max_abs as f64);
        entries.push(v);
    }
    Matrix::from_flat(n, entries).expect("generated entries are finite")
}

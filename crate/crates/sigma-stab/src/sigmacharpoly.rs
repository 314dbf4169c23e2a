//! Characteristic-polynomial coefficients of the family `M_sigma`, as
//! polynomials in `sigma`.
//!
//! For an `n x n` matrix the characteristic polynomial of `M_sigma` (monic,
//! in the variable `x`) is
//!
//! ```text
//! det(x I - M_sigma) = sum_{i=0}^{n} p_i(sigma) x^i
//! ```
//!
//! where each coefficient `p_i` is itself a polynomial in `sigma` with
//! rigid structure:
//!
//! - `deg p_i <= n - i`, and `p_n = 1`;
//! - the coefficient of `sigma^{n-i-1}` in `p_i` vanishes identically
//!   (no permutation in the determinant expansion hits exactly `n - 1`
//!   diagonal entries);
//! - the leading coefficient of `p_i` equals `e_{n-i}`, the elementary
//!   symmetric sum of the negated diagonal (only the identity permutation
//!   reaches `sigma^{n-i}`);
//! - in particular `p_{n-1}(sigma) = e_1 sigma` exactly, and
//!   `p_0(sigma) = (-1)^n det(M_sigma)`.
//!
//! The coefficients are recovered by sampling: [`charpoly_at`] evaluates the
//! characteristic polynomial at integer values of `sigma` with the
//! Faddeev-LeVerrier recurrence, and each `p_i` is then interpolated from
//! its `n - i + 1` determining samples by Newton divided differences at the
//! nodes `0, 1, ..., n - i`. Consecutive integer nodes make the divided
//! differences exact for integer matrices: every difference is an integer,
//! and the divisions come out exact.

use crate::matcore::{build_sigma_matrix, Matrix, SigmaValue};
use crate::upoly::RealPoly;

/// Node counts above this trigger a conditioning warning: equispaced
/// interpolation error grows combinatorially with degree.
const WELL_CONDITIONED_MAX_N: usize = 25;

/// The coefficient polynomials `p_0, ..., p_n` of the family `M_sigma`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaCharPoly {
    n: usize,
    polys: Vec<RealPoly>,
    conditioning_warning: Option<String>,
}

impl SigmaCharPoly {
    /// Matrix dimension `n`; there are `n + 1` coefficient polynomials.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The coefficient polynomial `p_i(sigma)` of `x^i`.
    pub fn poly(&self, i: usize) -> &RealPoly {
        &self.polys[i]
    }

    /// All coefficient polynomials, index `i` holding `p_i`.
    pub fn polys(&self) -> &[RealPoly] {
        &self.polys
    }

    /// Ascending characteristic-polynomial coefficients at a given `sigma`,
    /// reconstructed from the interpolated `p_i`.
    pub fn eval_at_sigma(&self, sigma: f64) -> Vec<f64> {
        self.polys.iter().map(|p| p.eval(sigma)).collect()
    }

    /// Present when the dimension is large enough that equispaced-node
    /// interpolation degrades coefficient accuracy.
    pub fn conditioning_warning(&self) -> Option<&str> {
        self.conditioning_warning.as_deref()
    }
}

/// Ascending coefficients `[c_0, ..., c_n]` (with `c_n = 1`) of
/// `det(x I - M_sigma)`, by the Faddeev-LeVerrier recurrence:
/// `B_1 = A`, `c_{n-k} = -tr(B_k) / k`, `B_{k+1} = A (B_k + c_{n-k} I)`.
///
/// O(n^4) per evaluation, but exact in rational arithmetic and — for
/// integer inputs of moderate size — exact in f64 as well, which is what
/// the interpolation in [`coefficient_polynomials`] relies on.
pub fn charpoly_at(m: &Matrix, sigma: SigmaValue) -> Vec<f64> {
    let a = build_sigma_matrix(m, sigma);
    let n = a.n();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;

    let mut b = a.as_slice().to_vec();
    for k in 1..=n {
        let trace: f64 = (0..n).map(|i| b[i * n + i]).sum();
        let c = -trace / k as f64;
        coeffs[n - k] = c;
        if k == n {
            break;
        }
        // B <- A (B + c I)
        for i in 0..n {
            b[i * n + i] += c;
        }
        let mut next = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let aval = a.get(i, l);
                if aval == 0.0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += aval * b[l * n + j];
                }
            }
        }
        b = next;
    }
    coeffs
}

/// Recovers every `p_i` by interpolating [`charpoly_at`] samples at the
/// integer nodes `sigma = 0, 1, ..., n`.
///
/// Coefficient `i` uses only its first `n - i + 1` samples — exactly the
/// number its degree bound requires — so the linear system is square and
/// the Newton form is evaluated directly.
pub fn coefficient_polynomials(m: &Matrix) -> SigmaCharPoly {
    let n = m.n();
    // samples[t][i] = p_i(t)
    let samples: Vec<Vec<f64>> = (0..=n)
        .map(|t| charpoly_at(m, SigmaValue::new(t as f64).expect("integer node is finite")))
        .collect();

    let polys = (0..=n)
        .map(|i| {
            let deg = n - i;
            let values: Vec<f64> = (0..=deg).map(|t| samples[t][i]).collect();
            let newton = divided_differences(&values);
            RealPoly::new(newton_to_monomial(&newton))
        })
        .collect();

    let conditioning_warning = (n > WELL_CONDITIONED_MAX_N).then(|| {
        format!(
            "n = {n}: interpolation at {} equispaced nodes is ill-conditioned; \
             coefficient polynomials may lose precision",
            n + 1
        )
    });

    SigmaCharPoly { n, polys, conditioning_warning }
}

/// Elementary symmetric sums `e_1, ..., e_n` of the negated diagonal
/// `(-m_11, ..., -m_nn)`; `e_{n-i}` is the leading coefficient of `p_i`.
pub fn leading_diagonal_sums(m: &Matrix) -> Vec<f64> {
    let n = m.n();
    // Coefficients of prod_i (1 - m_ii t): entry k is e_k.
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for (i, &d) in m.diag().iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] += -d * e[k - 1];
        }
    }
    e.remove(0);
    e
}

/// In-place Newton divided differences over the nodes `0, 1, ..., len-1`.
/// Node spacing is the integer `k` at level `k`.
fn divided_differences(values: &[f64]) -> Vec<f64> {
    let mut a = values.to_vec();
    let d = a.len();
    for k in 1..d {
        for j in (k..d).rev() {
            a[j] = (a[j] - a[j - 1]) / k as f64;
        }
    }
    a
}

/// Expands the Newton form `sum_j a_j prod_{l<j} (x - l)` (nodes `0..j`)
/// into ascending monomial coefficients, Horner style.
fn newton_to_monomial(newton: &[f64]) -> Vec<f64> {
    let d = newton.len() - 1;
    let mut poly = vec![newton[d]];
    for j in (0..d).rev() {
        // poly <- poly * (x - j) + a_j
        let mut next = vec![0.0; poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= j as f64 * c;
        }
        next[0] += newton[j];
        poly = next;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    fn sigma(v: f64) -> SigmaValue {
        SigmaValue::new(v).unwrap()
    }

    fn assert_poly_close(p: &RealPoly, want: &[f64], tol: f64) {
        let got = p.coeffs();
        assert!(
            got.len() <= want.len(),
            "degree too high: got {:?} want {:?}",
            got,
            want
        );
        for (k, &w) in want.iter().enumerate() {
            let g = p.coeff(k);
            assert!((g - w).abs() <= tol, "coeff {k}: {g} vs {w}");
        }
    }

    #[test]
    fn charpoly_samples_symmetric_two_by_two() {
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        // det(xI - M_2) = x^2 + 4x + 0
        assert_eq!(charpoly_at(&m, sigma(2.0)), vec![0.0, 4.0, 1.0]);
        // det(xI - M_1) = x^2 + 2x - 3
        assert_eq!(charpoly_at(&m, sigma(1.0)), vec![-3.0, 2.0, 1.0]);
        // det(xI - M_0) = x^2 - 4
        assert_eq!(charpoly_at(&m, sigma(0.0)), vec![-4.0, 0.0, 1.0]);
    }

    #[test]
    fn coefficients_of_symmetric_two_by_two() {
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        let cp = coefficient_polynomials(&m);
        assert_poly_close(cp.poly(0), &[-4.0, 0.0, 1.0], 1e-12); // sigma^2 - 4
        assert_poly_close(cp.poly(1), &[0.0, 2.0], 1e-12); // 2 sigma
        assert_poly_close(cp.poly(2), &[1.0], 0.0);
        assert!(cp.conditioning_warning().is_none());
    }

    #[test]
    fn coefficients_of_diagonal_matrix_are_exact() {
        // diag(-1,-2,-3): det(xI - M_sigma) = (x + sigma)(x + 2 sigma)(x + 3 sigma)
        //               = x^3 + 6 sigma x^2 + 11 sigma^2 x + 6 sigma^3
        let m = Matrix::diagonal(&[-1.0, -2.0, -3.0]).unwrap();
        let cp = coefficient_polynomials(&m);
        assert_eq!(cp.poly(0).coeffs(), &[0.0, 0.0, 0.0, 6.0]);
        assert_eq!(cp.poly(1).coeffs(), &[0.0, 0.0, 11.0]);
        assert_eq!(cp.poly(2).coeffs(), &[0.0, 6.0]);
        assert_eq!(cp.poly(3).coeffs(), &[1.0]);
    }

    #[test]
    fn diagonal_sums_of_negated_diagonal() {
        let m = Matrix::diagonal(&[-1.0, -2.0, -3.0]).unwrap();
        assert_eq!(leading_diagonal_sums(&m), vec![6.0, 11.0, 6.0]);
    }

    #[test]
    fn structure_on_dense_four_by_four() {
        let m = mat(&[
            &[-2.0, 1.0, 0.5, -1.0],
            &[3.0, -4.0, 1.0, 2.0],
            &[0.0, 2.0, -1.5, 1.0],
            &[1.0, -1.0, 2.0, -3.0],
        ]);
        let n = m.n();
        let cp = coefficient_polynomials(&m);
        let e = leading_diagonal_sums(&m);

        // p_n = 1 and degree bounds
        assert_eq!(cp.poly(n).coeffs(), &[1.0]);
        for i in 0..=n {
            assert!(cp.poly(i).degree() <= n - i);
        }
        // coefficient of sigma^{n-i-1} in p_i vanishes
        for i in 0..n {
            let c = cp.poly(i).coeff(n - i - 1);
            assert!(c.abs() < 1e-9, "p_{i} sigma^{} coeff = {c}", n - i - 1);
        }
        // leading coefficient of p_i is e_{n-i}
        for i in 0..n {
            let lead = cp.poly(i).coeff(n - i);
            assert!((lead - e[n - i - 1]).abs() < 1e-9, "p_{i} lead {lead} vs {}", e[n - i - 1]);
        }
        // trace identity: p_{n-1} = e_1 sigma exactly
        assert_poly_close(cp.poly(n - 1), &[0.0, e[0]], 1e-12);
    }

    #[test]
    fn constant_coefficient_matches_determinant() {
        let m = mat(&[
            &[-2.0, 1.0, 0.5],
            &[3.0, -4.0, 1.0],
            &[0.0, 2.0, -1.5],
        ]);
        let cp = coefficient_polynomials(&m);
        for &s in &[0.0, 0.7, 1.0, 2.3] {
            let msig = build_sigma_matrix(&m, sigma(s));
            let want = -msig.det_lu(); // (-1)^3 det
            let got = cp.poly(0).eval(s);
            assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "{got} vs {want}");
        }
    }

    #[test]
    fn eval_at_sigma_matches_direct_samples() {
        let m = mat(&[
            &[-1.0, 0.5, 2.0],
            &[1.0, -3.0, 0.0],
            &[0.5, 1.0, -2.0],
        ]);
        let cp = coefficient_polynomials(&m);
        for &s in &[0.25, 1.5, 3.75] {
            let direct = charpoly_at(&m, sigma(s));
            let interp = cp.eval_at_sigma(s);
            for (a, b) in direct.iter().zip(&interp) {
                assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn one_by_one_family() {
        let m = mat(&[&[-3.0]]);
        let cp = coefficient_polynomials(&m);
        // det(xI - M_sigma) = x + 3 sigma
        assert_eq!(cp.poly(0).coeffs(), &[0.0, 3.0]);
        assert_eq!(cp.poly(1).coeffs(), &[1.0]);
    }

    #[test]
    fn conditioning_warning_threshold() {
        let m = Matrix::diagonal(&vec![-1.0; 26]).unwrap();
        assert!(coefficient_polynomials(&m).conditioning_warning().is_some());
        let m = Matrix::diagonal(&vec![-1.0; 5]).unwrap();
        assert!(coefficient_polynomials(&m).conditioning_warning().is_none());
    }

    #[test]
    fn newton_helpers_recover_polynomial() {
        // f(t) = t^2 - 4 sampled at 0,1,2
        let newton = divided_differences(&[-4.0, -3.0, 0.0]);
        assert_eq!(newton_to_monomial(&newton), vec![-4.0, 0.0, 1.0]);
    }
}

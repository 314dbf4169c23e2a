//! Dense nonsymmetric eigenvalues and the spectral abscissa.
//!
//! Two stages, both operating on a copy of the input: an orthogonal
//! (Householder) reduction to upper Hessenberg form, then the Francis
//! implicit double-shift QR iteration with the classic exceptional shifts at
//! iterations 10 and 30 of a stuck deflation. Eigenvalues only — no Schur
//! vectors are accumulated, and the sweep updates stay inside the active
//! window, which keeps the cost at a small multiple of `n^2` per sweep.
//!
//! This module deliberately shares no code with the polynomial root finder
//! in [`crate::upoly`]; the stability checks lean on the two paths agreeing.

use std::fmt;

use num_complex::Complex64;

use crate::matcore::Matrix;

/// Total QR sweeps allowed per matrix, scaled by dimension.
const SWEEP_BUDGET_PER_EIG: usize = 30;
/// Absolute tie tolerance when collecting eigenvalues that attain the
/// spectral abscissa.
const LEAD_TIE_TOL: f64 = 1e-9;
/// Relative imaginary-part tolerance under which a leading eigenvalue is
/// treated as real (scaled by `max(1, inf_norm)`).
const REAL_IM_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub enum EigError {
    /// QR iteration exhausted its sweep budget before deflating fully.
    NoConvergence { sweeps: usize },
}

impl fmt::Display for EigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigError::NoConvergence { sweeps } => {
                write!(f, "QR iteration did not converge after {sweeps} sweeps")
            }
        }
    }
}

impl std::error::Error for EigError {}

/// Spectrum summary of a real square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// All eigenvalues, sorted by descending real part, then descending
    /// imaginary part (complex pairs stay adjacent).
    pub eigenvalues: Vec<Complex64>,
    /// Largest real part.
    pub abscissa: f64,
    /// Eigenvalues whose real part ties the abscissa (within `1e-9`).
    pub leading: Vec<Complex64>,
    /// True when some leading eigenvalue is real, i.e. its imaginary part is
    /// below `1e-7 * max(1, inf_norm)`.
    pub real_leading: bool,
}

/// Eigenvalues of `m`, unordered beyond the deflation order of the QR
/// iteration. Complex eigenvalues of a real matrix arrive in conjugate pairs.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<Complex64>, EigError> {
    let n = m.n();
    let mut h = Hess::new(m);
    h.reduce_to_hessenberg();
    h.francis_qr()?;
    Ok((0..n).map(|i| Complex64::new(h.d[i], h.e[i])).collect())
}

/// Largest real part over the spectrum.
pub fn spectral_abscissa(m: &Matrix) -> Result<f64, EigError> {
    Ok(spectrum(m)?.abscissa)
}

/// Computes eigenvalues plus the abscissa/leading-set summary.
pub fn spectrum(m: &Matrix) -> Result<Spectrum, EigError> {
    let mut eigs = eigenvalues(m)?;
    eigs.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
    let abscissa = eigs.first().map(|z| z.re).unwrap_or(f64::NEG_INFINITY);
    let leading: Vec<Complex64> = eigs
        .iter()
        .copied()
        .filter(|z| (abscissa - z.re) <= LEAD_TIE_TOL)
        .collect();
    let im_tol = REAL_IM_TOL * m.inf_norm().max(1.0);
    let real_leading = leading.iter().any(|z| z.im.abs() <= im_tol);
    Ok(Spectrum { eigenvalues: eigs, abscissa, leading, real_leading })
}

/// Roots of a polynomial given by ascending coefficients, via the
/// eigenvalues of its companion matrix. Exists so polynomial roots can be
/// cross-checked against the Sturm-based finder through an entirely
/// different algorithm. Constant polynomials have no roots.
pub fn companion_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, EigError> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = c[deg];
    let mut entries = vec![0.0; deg * deg];
    for i in 0..deg {
        entries[i * deg + (deg - 1)] = -c[i] / lead;
        if i + 1 < deg {
            entries[(i + 1) * deg + i] = 1.0;
        }
    }
    let companion = Matrix::from_flat(deg, entries).expect("companion is square by construction");
    eigenvalues(&companion)
}

/// Working state for the reduction + iteration. Indices are `isize`
/// because the deflation loop counts the active block boundary down past
/// zero; the accessors cast at the edge.
struct Hess {
    n: isize,
    h: Vec<f64>,
    d: Vec<f64>,
    e: Vec<f64>,
}

impl Hess {
    fn new(m: &Matrix) -> Self {
        Hess {
            n: m.n() as isize,
            h: m.as_slice().to_vec(),
            d: vec![0.0; m.n()],
            e: vec![0.0; m.n()],
        }
    }

    #[inline]
    fn at(&self, i: isize, j: isize) -> f64 {
        self.h[(i * self.n + j) as usize]
    }

    #[inline]
    fn set(&mut self, i: isize, j: isize, v: f64) {
        self.h[(i * self.n + j) as usize] = v;
    }

    /// Householder reduction to upper Hessenberg form.
    fn reduce_to_hessenberg(&mut self) {
        let n = self.n;
        let low: isize = 0;
        let high: isize = n - 1;
        let mut ort = vec![0.0; n as usize];

        let mut m = low + 1;
        while m <= high - 1 {
            let mut scale = 0.0;
            for i in m..=high {
                scale += self.at(i, m - 1).abs();
            }
            if scale != 0.0 {
                let mut hsum = 0.0;
                for i in (m..=high).rev() {
                    ort[i as usize] = self.at(i, m - 1) / scale;
                    hsum += ort[i as usize] * ort[i as usize];
                }
                let mut g = hsum.sqrt();
                if ort[m as usize] > 0.0 {
                    g = -g;
                }
                hsum -= ort[m as usize] * g;
                ort[m as usize] -= g;

                // Apply Householder similarity H <- (I - u u'/h) H (I - u u'/h)
                for j in m..n {
                    let mut f = 0.0;
                    for i in (m..=high).rev() {
                        f += ort[i as usize] * self.at(i, j);
                    }
                    f /= hsum;
                    for i in m..=high {
                        let v = self.at(i, j) - f * ort[i as usize];
                        self.set(i, j, v);
                    }
                }
                for i in 0..=high {
                    let mut f = 0.0;
                    for j in (m..=high).rev() {
                        f += ort[j as usize] * self.at(i, j);
                    }
                    f /= hsum;
                    for j in m..=high {
                        let v = self.at(i, j) - f * ort[j as usize];
                        self.set(i, j, v);
                    }
                }
                self.set(m, m - 1, scale * g);
            }
            m += 1;
        }
    }

    /// Francis double-shift QR on the Hessenberg matrix; fills `d` (real
    /// parts) and `e` (imaginary parts).
    fn francis_qr(&mut self) -> Result<(), EigError> {
        let nn = self.n;
        let mut n = nn - 1;
        let low: isize = 0;
        let high: isize = nn - 1;
        let eps = f64::EPSILON;
        let mut exshift = 0.0;
        let (mut p, mut q, mut r, mut s, mut z): (f64, f64, f64, f64, f64);
        let (mut x, mut y, mut w): (f64, f64, f64);
        p = 0.0;
        q = 0.0;
        r = 0.0;

        // Frobenius-style norm over the Hessenberg band; deflation thresholds
        // fall back to it when a diagonal pair is exactly zero.
        let mut norm = 0.0;
        for i in 0..nn {
            for j in (i - 1).max(0)..nn {
                norm += self.at(i, j).abs();
            }
        }
        if norm == 0.0 {
            return Ok(()); // zero matrix: all eigenvalues zero
        }

        let budget = SWEEP_BUDGET_PER_EIG * (nn as usize).max(1) + 100;
        let mut sweeps = 0usize;
        let mut iter = 0usize;
        while n >= low {
            // Look for a single small subdiagonal element.
            let mut l = n;
            while l > low {
                s = self.at(l - 1, l - 1).abs() + self.at(l, l).abs();
                if s == 0.0 {
                    s = norm;
                }
                if self.at(l, l - 1).abs() < eps * s {
                    break;
                }
                l -= 1;
            }

            if l == n {
                // One root found.
                let v = self.at(n, n) + exshift;
                self.set(n, n, v);
                self.d[n as usize] = v;
                self.e[n as usize] = 0.0;
                n -= 1;
                iter = 0;
            } else if l == n - 1 {
                // Two roots found (real pair or complex conjugates).
                w = self.at(n, n - 1) * self.at(n - 1, n);
                p = (self.at(n - 1, n - 1) - self.at(n, n)) / 2.0;
                q = p * p + w;
                z = q.abs().sqrt();
                let vnn = self.at(n, n) + exshift;
                self.set(n, n, vnn);
                let v1 = self.at(n - 1, n - 1) + exshift;
                self.set(n - 1, n - 1, v1);
                x = vnn;
                if q >= 0.0 {
                    z = if p >= 0.0 { p + z } else { p - z };
                    self.d[(n - 1) as usize] = x + z;
                    self.d[n as usize] = self.d[(n - 1) as usize];
                    if z != 0.0 {
                        self.d[n as usize] = x - w / z;
                    }
                    self.e[(n - 1) as usize] = 0.0;
                    self.e[n as usize] = 0.0;
                } else {
                    self.d[(n - 1) as usize] = x + p;
                    self.d[n as usize] = x + p;
                    self.e[(n - 1) as usize] = z;
                    self.e[n as usize] = -z;
                }
                n -= 2;
                iter = 0;
            } else {
                // No convergence yet: form a shift and sweep.
                x = self.at(n, n);
                y = 0.0;
                w = 0.0;
                if l < n {
                    y = self.at(n - 1, n - 1);
                    w = self.at(n, n - 1) * self.at(n - 1, n);
                }

                // Wilkinson's original ad hoc shift.
                if iter == 10 {
                    exshift += x;
                    for i in low..=n {
                        let v = self.at(i, i) - x;
                        self.set(i, i, v);
                    }
                    s = self.at(n, n - 1).abs() + self.at(n - 1, n - 2).abs();
                    x = 0.75 * s;
                    y = x;
                    w = -0.4375 * s * s;
                }

                // MATLAB's ad hoc shift.
                if iter == 30 {
                    s = (y - x) / 2.0;
                    s = s * s + w;
                    if s > 0.0 {
                        s = s.sqrt();
                        if y < x {
                            s = -s;
                        }
                        s = x - w / (s + (y - x) / 2.0);
                        for i in low..=n {
                            let v = self.at(i, i) - s;
                            self.set(i, i, v);
                        }
                        exshift += s;
                        x = 0.964;
                        y = x;
                        w = x;
                    }
                }

                iter += 1;
                sweeps += 1;
                if sweeps > budget {
                    return Err(EigError::NoConvergence { sweeps });
                }

                // Look for two consecutive small subdiagonal elements.
                let mut m = n - 2;
                while m >= l {
                    z = self.at(m, m);
                    r = x - z;
                    s = y - z;
                    p = (r * s - w) / self.at(m + 1, m) + self.at(m, m + 1);
                    q = self.at(m + 1, m + 1) - z - r - s;
                    r = self.at(m + 2, m + 1);
                    s = p.abs() + q.abs() + r.abs();
                    p /= s;
                    q /= s;
                    r /= s;
                    if m == l {
                        break;
                    }
                    if self.at(m, m - 1).abs() * (q.abs() + r.abs())
                        < eps
                            * (p.abs()
                                * (self.at(m - 1, m - 1).abs()
                                    + z.abs()
                                    + self.at(m + 1, m + 1).abs()))
                    {
                        break;
                    }
                    m -= 1;
                }

                for i in (m + 2)..=n {
                    self.set(i, i - 2, 0.0);
                    if i > m + 2 {
                        self.set(i, i - 3, 0.0);
                    }
                }

                // Double QR sweep on rows l..=n, columns m..=n.
                let mut x_loc = 0.0;
                for k in m..n {
                    let notlast = k != n - 1;
                    if k != m {
                        p = self.at(k, k - 1);
                        q = self.at(k + 1, k - 1);
                        r = if notlast { self.at(k + 2, k - 1) } else { 0.0 };
                        x_loc = p.abs() + q.abs() + r.abs();
                        if x_loc != 0.0 {
                            p /= x_loc;
                            q /= x_loc;
                            r /= x_loc;
                        }
                    }
                    if k != m && x_loc == 0.0 {
                        break;
                    }
                    s = (p * p + q * q + r * r).sqrt();
                    if p < 0.0 {
                        s = -s;
                    }
                    if s != 0.0 {
                        if k != m {
                            self.set(k, k - 1, -s * x_loc);
                        } else if l != m {
                            let v = -self.at(k, k - 1);
                            self.set(k, k - 1, v);
                        }
                        p += s;
                        let px = p / s;
                        let py = q / s;
                        let pz = r / s;
                        q /= p;
                        r /= p;

                        // Row modification (within the active window).
                        for j in k..=n {
                            let mut pp = self.at(k, j) + q * self.at(k + 1, j);
                            if notlast {
                                pp += r * self.at(k + 2, j);
                                let v = self.at(k + 2, j) - pp * pz;
                                self.set(k + 2, j, v);
                            }
                            let v0 = self.at(k, j) - pp * px;
                            self.set(k, j, v0);
                            let v1 = self.at(k + 1, j) - pp * py;
                            self.set(k + 1, j, v1);
                        }

                        // Column modification.
                        let imax = n.min(k + 3);
                        for i in l..=imax {
                            let mut pp = px * self.at(i, k) + py * self.at(i, k + 1);
                            if notlast {
                                pp += pz * self.at(i, k + 2);
                                let v = self.at(i, k + 2) - pp * r;
                                self.set(i, k + 2, v);
                            }
                            let v0 = self.at(i, k) - pp;
                            self.set(i, k, v0);
                            let v1 = self.at(i, k + 1) - pp * q;
                            self.set(i, k + 1, v1);
                        }
                    }
                }
            }
        }
        let _ = high;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    fn sorted_res(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let m = Matrix::diagonal(&[-1.0, -2.0, -3.0]).unwrap();
        let eigs = sorted_res(eigenvalues(&m).unwrap());
        let want = [-3.0, -2.0, -1.0];
        for (z, w) in eigs.iter().zip(want) {
            assert!((z.re - w).abs() < 1e-12 && z.im == 0.0, "{z:?}");
        }
        assert_eq!(spectral_abscissa(&m).unwrap(), -1.0);
    }

    #[test]
    fn symmetric_two_by_two() {
        // eigenvalues of [[-1,2],[2,-1]] are 1 and -3
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        let sp = spectrum(&m).unwrap();
        assert!((sp.abscissa - 1.0).abs() < 1e-12);
        assert!(sp.real_leading);
        let eigs = sorted_res(sp.eigenvalues);
        assert!((eigs[0].re + 3.0).abs() < 1e-12);
        assert!((eigs[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_rotation_gives_conjugate_pair() {
        let m = mat(&[&[0.0, -2.0], &[2.0, 0.0]]);
        let sp = spectrum(&m).unwrap();
        assert!(sp.abscissa.abs() < 1e-12);
        assert!(!sp.real_leading);
        assert_eq!(sp.leading.len(), 2);
        let eigs = sorted_res(sp.eigenvalues);
        assert!((eigs[0].im + 2.0).abs() < 1e-10);
        assert!((eigs[1].im - 2.0).abs() < 1e-10);
    }

    #[test]
    fn jordan_block_double_zero() {
        let m = mat(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let eigs = eigenvalues(&m).unwrap();
        assert!(eigs.iter().all(|z| z.norm() < 1e-10));
    }

    #[test]
    fn repeated_blocks() {
        // block diag of two copies of [[-1,2],[2,-1]]: eigenvalues {1,1,-3,-3}
        let m = mat(&[
            &[-1.0, 2.0, 0.0, 0.0],
            &[2.0, -1.0, 0.0, 0.0],
            &[0.0, 0.0, -1.0, 2.0],
            &[0.0, 0.0, 2.0, -1.0],
        ]);
        let eigs = sorted_res(eigenvalues(&m).unwrap());
        let want = [-3.0, -3.0, 1.0, 1.0];
        for (z, w) in eigs.iter().zip(want) {
            assert!((z.re - w).abs() < 1e-10 && z.im.abs() < 1e-10, "{z:?}");
        }
    }

    #[test]
    fn trace_and_det_identities() {
        let m = mat(&[
            &[-2.0, 1.0, 0.5, -1.0],
            &[3.0, -4.0, 1.0, 2.0],
            &[0.0, 2.0, -1.5, 1.0],
            &[1.0, -1.0, 2.0, -3.0],
        ]);
        let eigs = eigenvalues(&m).unwrap();
        let sum: Complex64 = eigs.iter().sum();
        let prod: Complex64 = eigs.iter().product();
        assert!((sum.re - m.trace()).abs() < 1e-10, "trace {} vs {}", sum.re, m.trace());
        assert!(sum.im.abs() < 1e-10);
        assert!((prod.re - m.det_lu()).abs() < 1e-8 * m.det_lu().abs().max(1.0));
    }

    #[test]
    fn companion_roots_of_quadratic() {
        // x^2 - 4
        let roots = sorted_res(companion_roots(&[-4.0, 0.0, 1.0]).unwrap());
        assert!((roots[0].re + 2.0).abs() < 1e-10);
        assert!((roots[1].re - 2.0).abs() < 1e-10);
        // x^2 + 4
        let roots = sorted_res(companion_roots(&[4.0, 0.0, 1.0]).unwrap());
        assert!((roots[0].im + 2.0).abs() < 1e-10);
        assert!((roots[1].im - 2.0).abs() < 1e-10);
    }

    #[test]
    fn companion_of_mixed_quartic() {
        // (x^2 + 1)(x - 2)(x + 3) = x^4 + x^3 - 5x^2 + x - 6
        let roots = sorted_res(companion_roots(&[-6.0, 1.0, -5.0, 1.0, 1.0]).unwrap());
        assert!((roots[0].re + 3.0).abs() < 1e-9);
        assert!((roots[3].re - 2.0).abs() < 1e-9);
        assert!((roots[1].im + 1.0).abs() < 1e-9 || (roots[2].im + 1.0).abs() < 1e-9);
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        assert!(companion_roots(&[5.0]).unwrap().is_empty());
    }

    #[test]
    fn zero_matrix_is_fine() {
        let m = Matrix::from_flat(3, vec![0.0; 9]).unwrap();
        let eigs = eigenvalues(&m).unwrap();
        assert!(eigs.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn one_by_one() {
        let m = mat(&[&[-7.5]]);
        let sp = spectrum(&m).unwrap();
        assert_eq!(sp.abscissa, -7.5);
        assert!(sp.real_leading);
        assert_eq!(sp.leading.len(), 1);
    }
}

//! Univariate real polynomials with certified real-root extraction.
//!
//! [`RealPoly`] stores coefficients in ascending degree order and keeps a
//! canonical form: trailing (highest-degree) coefficients below a relative
//! noise floor are trimmed at construction, so degrees stay honest even when
//! coefficients come out of floating-point interpolation.
//!
//! Real roots are found without any eigenvalue machinery, to keep this path
//! independent of the spectral one:
//!
//! 1. a gcd chain `g_0 = p, g_{k+1} = gcd(g_k, g_k')` splits off the
//!    square-free part and later recovers multiplicities;
//! 2. a Sturm sequence of the square-free part counts roots in half-open
//!    intervals `(a, b]`, starting from a Cauchy bound on root magnitude;
//! 3. isolated intervals are shrunk by count-guided bisection and polished
//!    with Newton steps.
//!
//! Counting with Sturm sequences (rather than sign changes of `p` itself)
//! makes the bisection immune to even-order tangencies and endpoint hits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Relative floor for trimming trailing coefficients at construction.
const CANON_FLOOR: f64 = 1e-13;
/// Relative floor for trimming remainders inside the Euclidean gcd.
const GCD_FLOOR: f64 = 1e-12;
/// Relative tolerance when testing whether a gcd-chain polynomial vanishes
/// at a candidate root (multiplicity detection).
const MULT_EVAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum PolyError {
    /// Root finding on the identically-zero polynomial is undefined.
    ZeroPolynomial,
    /// Bisection failed to separate or shrink an isolating interval.
    NoConvergence { lo: f64, hi: f64 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroPolynomial => {
                write!(f, "cannot extract roots of the zero polynomial")
            }
            PolyError::NoConvergence { lo, hi } => {
                write!(f, "root isolation did not converge on ({lo}, {hi}]")
            }
        }
    }
}

impl std::error::Error for PolyError {}

/// A polynomial with real coefficients, ascending degree order.
///
/// `coeffs[k]` is the coefficient of `x^k`. The zero polynomial is `[0.0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    /// Builds a polynomial from ascending coefficients and canonicalizes:
    /// trailing coefficients with `|c| <= 1e-13 * max|coeffs|` are dropped.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = RealPoly { coeffs };
        p.canonicalize();
        p
    }

    /// The constant polynomial `c`.
    pub fn constant(c: f64) -> Self {
        RealPoly::new(vec![c])
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: vec![0.0] }
    }

    /// Monic product of `(x - r)` over the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut p = RealPoly { coeffs: vec![1.0] };
        for &r in roots {
            p = &p * &RealPoly { coeffs: vec![-r, 1.0] };
        }
        p
    }

    fn canonicalize(&mut self) {
        let maxabs = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if maxabs == 0.0 {
            self.coeffs = vec![0.0];
            return;
        }
        let floor = CANON_FLOOR * maxabs;
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().abs() <= floor {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs = vec![0.0];
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading_coeff(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn constant_coeff(&self) -> f64 {
        self.coeffs[0]
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> RealPoly {
        if self.coeffs.len() == 1 {
            return RealPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        RealPoly::new(coeffs)
    }

    pub fn scale(&self, s: f64) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Rescales so the largest-magnitude coefficient is `1` and the leading
    /// coefficient is positive. Stabilizes Euclidean remainder chains.
    fn normalized(&self) -> RealPoly {
        if self.is_zero() {
            return RealPoly::zero();
        }
        let maxabs = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        let sign = if self.leading_coeff() < 0.0 { -1.0 } else { 1.0 };
        self.scale(sign / maxabs)
    }

    /// Rescales by `1 / max|coeff|` — a strictly positive factor, so every
    /// sign is preserved. Required for Sturm chains, whose members may be
    /// scaled individually but never sign-flipped.
    fn scaled_to_unit(&self) -> RealPoly {
        if self.is_zero() {
            return RealPoly::zero();
        }
        let maxabs = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        self.scale(1.0 / maxabs)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    ///
    /// Panics if the divisor is zero.
    pub fn div_rem(&self, divisor: &RealPoly) -> (RealPoly, RealPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let n = self.degree();
        let d = divisor.degree();
        if self.is_zero() || n < d {
            return (RealPoly::zero(), self.clone());
        }
        let lead = divisor.coeffs[d];
        if d == 0 {
            // A constant divides exactly; eliminating position 0 numerically
            // would leave an ulp of noise that survives the relative trim.
            return (self.scale(1.0 / lead), RealPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; n - d + 1];
        for k in (0..=n - d).rev() {
            let q = rem[d + k] / lead;
            quot[k] = q;
            for j in 0..=d {
                rem[j + k] -= q * divisor.coeffs[j];
            }
        }
        rem.truncate(d);
        (RealPoly::new(quot), RealPoly::new(rem))
    }

    /// Polynomial gcd by the Euclidean algorithm, with max-abs normalization
    /// each step and a relative cutoff (`1e-12`) on remainder coefficients so
    /// rounding noise terminates the chain. The result is normalized
    /// (max-abs `1`, positive leading coefficient); a constant result means
    /// the inputs are coprime.
    pub fn gcd(&self, other: &RealPoly) -> RealPoly {
        let mut a = self.normalized();
        let mut b = other.normalized();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() && !b.is_constant() {
            let (_, mut r) = a.div_rem(&b);
            // Suppress remainder noise relative to the dividend scale (both
            // operands are max-abs normalized, so the scale is 1); measuring
            // against the remainder's own scale would keep a pure-noise
            // remainder alive and report coprime inputs.
            let dividend_scale = a.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            let floor = GCD_FLOOR * dividend_scale.max(GCD_FLOOR);
            for c in r.coeffs.iter_mut() {
                if c.abs() <= floor {
                    *c = 0.0;
                }
            }
            r.canonicalize();
            a = b;
            b = r.normalized();
        }
        if b.is_zero() {
            a.normalized()
        } else {
            // Chain ended at a nonzero constant: coprime.
            RealPoly::constant(1.0)
        }
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    /// By Descartes' rule this bounds the count of positive real roots and
    /// matches it modulo 2.
    pub fn descartes_sign_changes(&self) -> usize {
        let mut changes = 0;
        let mut last = 0.0_f64;
        for &c in &self.coeffs {
            if c == 0.0 {
                continue;
            }
            if last != 0.0 && c.signum() != last.signum() {
                changes += 1;
            }
            last = c;
        }
        changes
    }

    /// Cauchy bound: every root `r` satisfies
    /// `|r| < 1 + max_k |a_k| / |a_deg|`.
    pub fn cauchy_root_bound(&self) -> f64 {
        if self.is_constant() {
            return 1.0;
        }
        let lead = self.leading_coeff().abs();
        let maxrest = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()));
        1.0 + maxrest / lead
    }

    /// All real roots with multiplicities, sorted ascending.
    ///
    /// `tol` is the relative width target for root refinement (the spacing
    /// at which bisection hands over to Newton polishing); `1e-10` is the
    /// CLI default. Fails with [`PolyError::ZeroPolynomial`] on the zero
    /// polynomial; a constant polynomial yields an empty list.
    pub fn real_roots(&self, tol: f64) -> Result<RootList, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(RootList { roots: Vec::new() });
        }

        // gcd chain: g_0 = p, g_{k+1} = gcd(g_k, g_k').
        // Roots of g_k are exactly the roots of p with multiplicity > k.
        let mut chain = vec![self.normalized()];
        while chain.last().unwrap().degree() >= 1 {
            let g = chain.last().unwrap();
            let next = g.gcd(&g.derivative());
            if next.is_constant() {
                break;
            }
            if next.degree() >= g.degree() {
                break; // numerically stuck; treat as square-free from here
            }
            chain.push(next);
        }

        // Square-free part carries one copy of every distinct root.
        let square_free = if chain.len() == 1 {
            chain[0].clone()
        } else {
            chain[0].div_rem(&chain[1]).0.normalized()
        };

        let simple = isolate_and_refine(&square_free, tol)?;

        let mut roots = Vec::with_capacity(simple.len());
        for r in simple {
            let mut multiplicity = 1u32;
            for g in chain.iter().skip(1) {
                // Scaled vanishing test: after normalization max|coeff| = 1.
                let scale = r.abs().max(1.0).powi(g.degree() as i32);
                if g.eval(r).abs() <= MULT_EVAL_TOL * scale {
                    multiplicity += 1;
                } else {
                    break;
                }
            }
            roots.push(RealRoot {
                value: r,
                multiplicity,
                residual: self.eval(r).abs(),
            });
        }
        Ok(RootList { roots })
    }
}

impl Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, rhs: &RealPoly) -> RealPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        RealPoly::new(coeffs)
    }
}

impl Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, rhs: &RealPoly) -> RealPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        RealPoly::new(coeffs)
    }
}

impl Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, rhs: &RealPoly) -> RealPoly {
        if self.is_zero() || rhs.is_zero() {
            return RealPoly::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RealPoly::new(coeffs)
    }
}

impl Neg for &RealPoly {
    type Output = RealPoly;
    fn neg(self) -> RealPoly {
        self.scale(-1.0)
    }
}

impl fmt::Display for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 && self.coeffs.len() > 1 {
                continue;
            }
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a == 1.0 => write!(f, "x")?,
                1 => write!(f, "{a} x")?,
                _ if a == 1.0 => write!(f, "x^{k}")?,
                _ => write!(f, "{a} x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A real root with its multiplicity and the original polynomial's
/// magnitude at the computed location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: u32,
    pub residual: f64,
}

/// Real roots sorted ascending.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootList {
    pub roots: Vec<RealRoot>,
}

impl RootList {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    /// Largest root, if any.
    pub fn max_root(&self) -> Option<f64> {
        self.roots.last().map(|r| r.value)
    }
}

// ── Sturm machinery ─────────────────────────────────────────────────

/// Sturm sequence of a square-free polynomial:
/// `s_0 = p, s_1 = p', s_{k+1} = -rem(s_{k-1}, s_k)`, each normalized.
fn sturm_chain(p: &RealPoly) -> Vec<RealPoly> {
    let mut chain = vec![p.scaled_to_unit(), p.derivative().scaled_to_unit()];
    while !chain.last().unwrap().is_zero() && !chain.last().unwrap().is_constant() {
        let k = chain.len();
        let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push((-&r).scaled_to_unit());
        if chain.len() > p.degree() + 2 {
            break; // degree must drop every step; guard regardless
        }
    }
    chain
}

/// Sign variations of the chain at `x`; exact zeros are skipped.
fn sign_variations(chain: &[RealPoly], x: f64) -> usize {
    let mut changes = 0;
    let mut last = 0.0_f64;
    for s in chain {
        let v = s.eval(x);
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Distinct real roots of a square-free polynomial, refined to `tol`.
fn isolate_and_refine(p: &RealPoly, tol: f64) -> Result<Vec<f64>, PolyError> {
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(p);
    let bound = p.cauchy_root_bound() * (1.0 + 1e-12) + 1e-12;
    let lo = -bound;
    let hi = bound;

    let v_lo = sign_variations(&chain, lo);
    let v_hi = sign_variations(&chain, hi);
    let total = v_lo.saturating_sub(v_hi);
    if total == 0 {
        return Ok(Vec::new());
    }

    // Work stack of (a, V(a), b, V(b)) half-open intervals (a, b].
    let mut stack = vec![(lo, v_lo, hi, v_hi)];
    let mut isolated: Vec<(f64, usize, f64, usize)> = Vec::new();
    let mut splits = 0usize;
    while let Some((a, va, b, vb)) = stack.pop() {
        let count = va.saturating_sub(vb);
        if count == 0 {
            continue;
        }
        let width_floor = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
        if count == 1 || (b - a) <= width_floor {
            // Unsplittable multi-root clusters collapse to one location;
            // the gcd chain upstream makes this effectively unreachable.
            isolated.push((a, va, b, vb));
            continue;
        }
        splits += 1;
        if splits > 4096 {
            return Err(PolyError::NoConvergence { lo: a, hi: b });
        }
        let mid = 0.5 * (a + b);
        let vm = sign_variations(&chain, mid);
        stack.push((a, va, mid, vm));
        stack.push((mid, vm, b, vb));
    }

    let mut roots: Vec<f64> = isolated
        .into_iter()
        .map(|(a, va, b, vb)| refine_root(p, &chain, a, va, b, vb, tol))
        .collect::<Result<_, _>>()?;
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(roots)
}

/// Shrinks an interval known to hold exactly one root by count-guided
/// bisection, then polishes with Newton steps confined to the interval.
fn refine_root(
    p: &RealPoly,
    chain: &[RealPoly],
    mut a: f64,
    mut va: usize,
    mut b: f64,
    vb: usize,
    tol: f64,
) -> Result<f64, PolyError> {
    let mut iters = 0usize;
    loop {
        let mid = 0.5 * (a + b);
        if (b - a) <= tol * mid.abs().max(1.0) || mid == a || mid == b {
            break;
        }
        iters += 1;
        if iters > 200 {
            return Err(PolyError::NoConvergence { lo: a, hi: b });
        }
        let vm = sign_variations(chain, mid);
        if va.saturating_sub(vm) >= 1 {
            b = mid;
        } else {
            a = mid;
            va = vm;
        }
    }
    let _ = vb;

    // Newton polish; reject steps that leave [a, b] or fail to reduce |p|.
    let mid = 0.5 * (a + b);
    let dp = p.derivative();
    let mut x = mid;
    for _ in 0..60 {
        let f = p.eval(x);
        if f == 0.0 {
            break;
        }
        let fp = dp.eval(x);
        if fp == 0.0 {
            break;
        }
        let next = x - f / fp;
        if !next.is_finite() || next < a || next > b {
            break;
        }
        let moved = (next - x).abs();
        x = next;
        if moved <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    if p.eval(x).abs() <= p.eval(mid).abs() {
        Ok(x)
    } else {
        Ok(mid)
    }
}

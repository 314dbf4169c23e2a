//! Stability analysis of the family `M_sigma`: the critical parameter, the
//! real-root set of the coefficient polynomials, and the cross-checks that
//! tie the two together.
//!
//! For a matrix with strictly negative diagonal, `M_0` has zero trace (so
//! its abscissa is `>= 0`) while beyond the Gershgorin threshold the
//! abscissa is `< 0`; the critical value `sigma_star` where the spectral
//! abscissa last touches zero therefore always lives in
//! `[0, gershgorin + 1]` and is found by bisection, followed by a sampled
//! verification that the abscissa stays negative above it.
//!
//! Independently, `omega_set` collects `Omega`, the real roots of all
//! coefficient polynomials `p_0, ..., p_{n-1}`. The two views are then
//! reconciled:
//!
//! - when the eigenvalue crossing at `sigma_star` is real, `max(Omega)`
//!   must equal `sigma_star` ([`check_theorem2`]);
//! - when it is a complex pair, `max(Omega) <= sigma_star`
//!   ([`check_corollary`]);
//! - the eigenvalues of the scaling companion `Mbar0 = I - D^{-1} M` must
//!   coincide with the roots of `p_0` as multisets
//!   ([`check_scaling_relation`]).
//!
//! Everything lands in a [`StabilityReport`], produced by [`analyze`].

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;

use crate::eig::{self, EigError, Spectrum};
use crate::matcore::{
    build_mbar0, build_sigma_matrix, gershgorin_sigma, MatError, Matrix, SigmaValue,
};
use crate::sigmacharpoly::{coefficient_polynomials, SigmaCharPoly};
use crate::upoly::{PolyError, RealPoly, RootList};

/// Relative imaginary-part tolerance for classifying the crossing as real.
const CROSSING_IM_TOL: f64 = 1e-7;
/// Complex-pair classification requires the imaginary part to clear the
/// real tolerance by this factor; in between is ambiguous.
const CROSSING_GRAY_FACTOR: f64 = 10.0;
/// Points sampled above `sigma_star` to confirm the abscissa stays negative.
const VERIFY_POINTS: usize = 64;
/// Re-bracketing rounds allowed when the verification scan finds the
/// abscissa re-entering the right half-plane.
const MAX_REBRACKETS: usize = 8;
/// Merge tolerance (relative) when collapsing nearby roots into one Omega value.
const OMEGA_MERGE_TOL: f64 = 1e-9;
/// Zero threshold for sign-table entries.
pub const SIGN_ZERO_TOL: f64 = 1e-9;

#[derive(Debug)]
pub enum StabilityError {
    Mat(MatError),
    Poly(PolyError),
    Eig(EigError),
    /// The abscissa failed to bracket a zero on `[0, gershgorin + 1]`.
    NoBracket { lo: f64, hi: f64, abscissa_lo: f64, abscissa_hi: f64 },
    /// The abscissa kept returning to the right half-plane above every
    /// candidate crossing.
    NotSigmaStable { sigma: f64 },
}

impl fmt::Display for StabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityError::Mat(e) => write!(f, "{e}"),
            StabilityError::Poly(e) => write!(f, "{e}"),
            StabilityError::Eig(e) => write!(f, "{e}"),
            StabilityError::NoBracket { lo, hi, abscissa_lo, abscissa_hi } => write!(
                f,
                "spectral abscissa does not cross zero on [{lo}, {hi}] \
                 (abscissa {abscissa_lo} at {lo}, {abscissa_hi} at {hi})"
            ),
            StabilityError::NotSigmaStable { sigma } => write!(
                f,
                "abscissa returns to >= 0 above every candidate crossing \
                 (last offender sigma = {sigma}); no stability threshold exists"
            ),
        }
    }
}

impl std::error::Error for StabilityError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            StabilityError::Mat(e) => Some(e),
            StabilityError::Poly(e) => Some(e),
            StabilityError::Eig(e) => Some(e),
            _ => None,
        }
    }
}

impl From<MatError> for StabilityError {
    fn from(e: MatError) -> Self {
        StabilityError::Mat(e)
    }
}

impl From<PolyError> for StabilityError {
    fn from(e: PolyError) -> Self {
        StabilityError::Poly(e)
    }
}

impl From<EigError> for StabilityError {
    fn from(e: EigError) -> Self {
        StabilityError::Eig(e)
    }
}

/// Sign of a coefficient polynomial value, with a zero band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: f64, zero_tol: f64) -> Sign {
        if v.abs() <= zero_tol {
            Sign::Zero
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

/// Nature of the eigenvalue that touches the imaginary axis at `sigma_star`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    /// A real eigenvalue crosses through zero.
    Real,
    /// A complex-conjugate pair crosses the imaginary axis off the real axis.
    ComplexPair,
    /// The leading imaginary part sits inside the numerical gray zone.
    Ambiguous,
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossing::Real => write!(f, "real"),
            Crossing::ComplexPair => write!(f, "complex_pair"),
            Crossing::Ambiguous => write!(f, "ambiguous"),
        }
    }
}

/// `Omega`: all real roots of the coefficient polynomials `p_0..p_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaSet {
    /// Root list of `p_i` at index `i` (empty for skipped polynomials).
    pub per_coefficient: Vec<RootList>,
    /// Merged distinct root values, ascending (nearby values collapsed).
    pub values: Vec<f64>,
    /// Largest element, if any.
    pub max: Option<f64>,
    /// Indices `i` whose `p_i` was identically zero and was skipped.
    pub zero_polynomials: Vec<usize>,
}

/// Critical parameter with its certification.
#[derive(Debug, Clone)]
pub struct CriticalSigma {
    pub sigma_star: f64,
    pub crossing: Crossing,
    /// Final bisection bracket: abscissa `>= 0` at `.0`, `< 0` at `.1`.
    pub certified_interval: (f64, f64),
    /// Spectrum of `M_sigma` at `sigma_star`.
    pub spectrum_at_star: Spectrum,
}

/// Real-crossing identity `max(Omega) = sigma_star`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem2Check {
    /// True when the crossing is real, i.e. the identity is asserted.
    pub applies: bool,
    pub holds: bool,
    /// `|sigma_star - max(Omega)|`; infinite when Omega is empty although
    /// the check applies; NaN when it does not apply.
    pub residual: f64,
}

/// Complex-crossing bound `max(Omega) <= sigma_star`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryCheck {
    /// True when the crossing is a complex pair, i.e. the bound is asserted.
    pub applies: bool,
    pub holds: bool,
    /// `sigma_star - max(Omega)`; infinite when Omega is empty (the bound
    /// is vacuous); NaN when the check does not apply.
    pub slack: f64,
}

/// Multiset agreement between `eig(Mbar0)` and the roots of `p_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCheck {
    pub holds: bool,
    /// Spectral abscissa of `Mbar0 = I - D^{-1} M`.
    pub mbar0_abscissa: f64,
    /// Greedy multiset-matching distance between the eigenvalues of `Mbar0`
    /// and the complex roots of `p_0`.
    pub p0_root_match_residual: f64,
    /// `det(M_sigma)` at `sigma = mbar0_abscissa`; near zero exactly when
    /// the abscissa of `Mbar0` is attained by a real eigenvalue.
    pub det_at_mbar0_abscissa: f64,
}

/// Everything [`analyze`] establishes about one matrix.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub n: usize,
    pub sigma_star: f64,
    pub crossing: Crossing,
    pub omega: OmegaSet,
    pub gershgorin: f64,
    pub theorem2: Theorem2Check,
    pub corollary: CorollaryCheck,
    pub scaling: ScalingCheck,
    /// Parity verification of every coefficient polynomial's sign pattern
    /// against its computed roots.
    pub sign_changes_verified: bool,
    pub certified_interval: (f64, f64),
    /// Leading eigenvalues of `M_sigma` at `sigma_star`.
    pub leading_eigenvalues: Vec<Complex64>,
    pub warnings: Vec<String>,
}

impl StabilityReport {
    /// True when every asserted identity held numerically.
    pub fn all_checks_hold(&self) -> bool {
        self.theorem2.holds
            && self.corollary.holds
            && self.scaling.holds
            && self.sign_changes_verified
    }
}

/// Wall-clock stage breakdown of [`analyze_timed`], in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageTimings {
    pub coefficients_ms: f64,
    pub omega_ms: f64,
    pub critical_ms: f64,
    pub checks_ms: f64,
    pub total_ms: f64,
}

/// Tunable tolerances for [`analyze`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzeOptions {
    /// Relative refinement target for roots and for the bisection bracket.
    pub tol: f64,
    /// Relative tolerance for the theorem cross-checks (scaled internally
    /// by `max(1, sigma_star)` or the root magnitude).
    pub theorem_tol: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { tol: 1e-10, theorem_tol: 1e-6 }
    }
}

/// Collects `Omega` from interpolated coefficient polynomials. Identically
/// zero coefficients (impossible under a negative diagonal, where every
/// leading coefficient `e_{n-i}` is positive) are skipped and recorded.
pub fn omega_set(cp: &SigmaCharPoly, tol: f64) -> Result<OmegaSet, StabilityError> {
    let n = cp.n();
    let mut per_coefficient = Vec::with_capacity(n);
    let mut zero_polynomials = Vec::new();
    for i in 0..n {
        let p = cp.poly(i);
        if p.is_zero() {
            zero_polynomials.push(i);
            per_coefficient.push(RootList::default());
            continue;
        }
        per_coefficient.push(p.real_roots(tol)?);
    }

    let mut values: Vec<f64> = per_coefficient
        .iter()
        .flat_map(|list| list.roots.iter().map(|r| r.value))
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values.dedup_by(|a, b| (*a - *b).abs() <= OMEGA_MERGE_TOL * a.abs().max(1.0));
    let max = values.last().copied();

    Ok(OmegaSet { per_coefficient, values, max, zero_polynomials })
}

/// Signs of `p_0(sigma), ..., p_n(sigma)`.
pub fn sign_table(cp: &SigmaCharPoly, sigma: f64, zero_tol: f64) -> Vec<Sign> {
    cp.polys().iter().map(|p| Sign::of(p.eval(sigma), zero_tol)).collect()
}

/// Finds `sigma_star`: the largest parameter where the spectral abscissa of
/// `M_sigma` touches zero, certified by a bracket and a downstream scan.
///
/// Bisection runs on `[0, gershgorin + 1]` with the invariant
/// `abscissa(lo) >= 0 > abscissa(hi)`. Afterwards the abscissa is sampled at
/// 64 points above the candidate; a sample back at `>= 0` re-brackets from
/// there (the crossing was not the last one) and bisection repeats.
pub fn critical_sigma(
    m: &Matrix,
    opts: &AnalyzeOptions,
) -> Result<CriticalSigma, StabilityError> {
    let gersh = gershgorin_sigma(m)?;
    let hi0 = gersh + 1.0;
    let zero_tol = 1e-12 * m.inf_norm().max(1.0);

    let abscissa_at = |s: f64| -> Result<f64, StabilityError> {
        let msig = build_sigma_matrix(m, SigmaValue::new(s)?);
        Ok(eig::spectral_abscissa(&msig)?)
    };

    let f_lo = abscissa_at(0.0)?;
    let f_hi = abscissa_at(hi0)?;
    // M_0 is traceless, so f_lo >= 0 up to rounding; beyond the Gershgorin
    // threshold all discs are in the left half-plane, so f_hi < 0.
    if f_lo < -zero_tol || f_hi >= 0.0 {
        return Err(StabilityError::NoBracket {
            lo: 0.0,
            hi: hi0,
            abscissa_lo: f_lo,
            abscissa_hi: f_hi,
        });
    }

    let mut lo = 0.0;
    let mut last_offender = 0.0;
    for _ in 0..MAX_REBRACKETS {
        let mut a = lo;
        let mut b = hi0;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if (b - a) <= opts.tol * mid.abs().max(1.0) || mid == a || mid == b {
                break;
            }
            if abscissa_at(mid)? >= 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let star = 0.5 * (a + b);

        let mut recross = None;
        for k in 1..=VERIFY_POINTS {
            let s = star + (hi0 - star) * k as f64 / VERIFY_POINTS as f64;
            if s <= star {
                continue;
            }
            if abscissa_at(s)? > zero_tol {
                recross = Some(s);
                break;
            }
        }
        match recross {
            None => {
                let spectrum_at_star =
                    eig::spectrum(&build_sigma_matrix(m, SigmaValue::new(star)?))?;
                let crossing = classify_crossing(&spectrum_at_star, m.inf_norm());
                return Ok(CriticalSigma {
                    sigma_star: star,
                    crossing,
                    certified_interval: (a, b),
                    spectrum_at_star,
                });
            }
            Some(s) => {
                last_offender = s;
                lo = s;
            }
        }
    }
    Err(StabilityError::NotSigmaStable { sigma: last_offender })
}

fn classify_crossing(spectrum: &Spectrum, scale: f64) -> Crossing {
    let im_tol = CROSSING_IM_TOL * scale.max(1.0);
    let any_real = spectrum.leading.iter().any(|z| z.im.abs() <= im_tol);
    if any_real {
        return Crossing::Real;
    }
    let all_clearly_complex = spectrum
        .leading
        .iter()
        .all(|z| z.im.abs() > CROSSING_GRAY_FACTOR * im_tol);
    if all_clearly_complex {
        Crossing::ComplexPair
    } else {
        Crossing::Ambiguous
    }
}

/// Verifies the real-crossing identity `max(Omega) = sigma_star`.
/// Vacuous (and marked so) unless the crossing is real.
pub fn check_theorem2(
    crossing: Crossing,
    sigma_star: f64,
    max_omega: Option<f64>,
    theorem_tol: f64,
) -> Theorem2Check {
    if crossing != Crossing::Real {
        return Theorem2Check { applies: false, holds: true, residual: f64::NAN };
    }
    match max_omega {
        Some(mx) => {
            let residual = (sigma_star - mx).abs();
            let holds = residual <= theorem_tol * sigma_star.abs().max(1.0);
            Theorem2Check { applies: true, holds, residual }
        }
        // A real crossing forces det(M_sigma_star) = 0, so p_0 has a real
        // root; an empty Omega contradicts the identity outright.
        None => Theorem2Check { applies: true, holds: false, residual: f64::INFINITY },
    }
}

/// Verifies the complex-crossing bound `max(Omega) <= sigma_star`.
/// Vacuous unless the crossing is a complex pair.
pub fn check_corollary(
    crossing: Crossing,
    sigma_star: f64,
    max_omega: Option<f64>,
    theorem_tol: f64,
) -> CorollaryCheck {
    if crossing != Crossing::ComplexPair {
        return CorollaryCheck { applies: false, holds: true, slack: f64::NAN };
    }
    match max_omega {
        Some(mx) => {
            let slack = sigma_star - mx;
            let holds = slack >= -theorem_tol * sigma_star.abs().max(1.0);
            CorollaryCheck { applies: true, holds, slack }
        }
        // No real roots at all: the bound is vacuously true.
        None => CorollaryCheck { applies: true, holds: true, slack: f64::INFINITY },
    }
}

/// Verifies that `eig(Mbar0)` and the roots of `p_0` agree as multisets
/// (the two differ only by the constant factor `(-1)^n det(D)` between the
/// polynomials, which leaves roots untouched).
pub fn check_scaling_relation(
    m: &Matrix,
    cp: &SigmaCharPoly,
    theorem_tol: f64,
) -> Result<ScalingCheck, StabilityError> {
    let mbar0 = build_mbar0(m)?;
    let eigs = eig::eigenvalues(&mbar0)?;
    let roots = eig::companion_roots(cp.poly(0).coeffs())?;

    let mbar0_abscissa = eigs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let det_at = build_sigma_matrix(m, SigmaValue::new(mbar0_abscissa)?).det_lu();

    let residual = if eigs.len() == roots.len() {
        multiset_match_residual(&eigs, &roots)
    } else {
        f64::INFINITY
    };
    let scale = eigs
        .iter()
        .chain(&roots)
        .map(|z| z.norm())
        .fold(1.0_f64, f64::max);
    Ok(ScalingCheck {
        holds: residual <= theorem_tol * scale,
        mbar0_abscissa,
        p0_root_match_residual: residual,
        det_at_mbar0_abscissa: det_at,
    })
}

/// Greedy nearest-neighbor matching; returns the largest matched distance.
fn multiset_match_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0_f64;
    for &x in a {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for (j, &y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (x - y).norm();
            if d < best {
                best = d;
                best_j = j;
            }
        }
        if best_j == usize::MAX {
            return f64::INFINITY;
        }
        used[best_j] = true;
        worst = worst.max(best);
    }
    worst
}

/// Parity check of each coefficient polynomial's sign pattern against its
/// computed roots: walking down from `+infinity` (where the sign is that of
/// the leading coefficient), the sign flips across a root exactly when its
/// multiplicity is odd. Probes midpoints between consecutive roots and one
/// unit beyond each end; probes that land numerically on zero are skipped.
pub fn verify_sign_changes(cp: &SigmaCharPoly, omega: &OmegaSet) -> bool {
    for (i, roots) in omega.per_coefficient.iter().enumerate() {
        let p = cp.poly(i);
        if p.is_zero() || p.is_constant() {
            continue;
        }
        if !sign_pattern_consistent(p, roots) {
            return false;
        }
    }
    true
}

fn sign_pattern_consistent(p: &RealPoly, roots: &RootList) -> bool {
    let scale = p.coeffs().iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let probe_tol = 1e-9 * scale.max(1.0);
    let values = &roots.roots;

    // Probe points: beyond each end and between consecutive roots.
    let mut probes: Vec<(f64, Sign)> = Vec::new();
    let mut expected = Sign::of(p.leading_coeff(), 0.0);
    if values.is_empty() {
        // No real roots: constant sign everywhere; sample a few points.
        let b = p.cauchy_root_bound();
        for x in [-b, 0.0, b] {
            probes.push((x, expected));
        }
        // Even degree keeps the leading sign at -infinity as well; odd
        // degree with no real roots is impossible, so expected is uniform.
    } else {
        probes.push((values.last().unwrap().value + 1.0, expected));
        for w in values.windows(2).rev() {
            // Crossing w[1] downwards flips the sign iff multiplicity is odd.
            if w[1].multiplicity % 2 == 1 {
                expected = flip(expected);
            }
            probes.push((0.5 * (w[0].value + w[1].value), expected));
        }
        if values[0].multiplicity % 2 == 1 {
            expected = flip(expected);
        }
        probes.push((values[0].value - 1.0, expected));
    }

    for (x, want) in probes {
        let got = p.eval(x);
        if got.abs() <= probe_tol {
            continue; // probe landed too close to a root to be conclusive
        }
        if Sign::of(got, 0.0) != want {
            return false;
        }
    }
    true
}

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Negative => Sign::Positive,
        Sign::Positive => Sign::Negative,
        Sign::Zero => Sign::Zero,
    }
}

/// Full analysis; see the module docs for the pipeline.
pub fn analyze(m: &Matrix, opts: &AnalyzeOptions) -> Result<StabilityReport, StabilityError> {
    analyze_timed(m, opts).map(|(report, _)| report)
}

/// [`analyze`] with a wall-clock stage breakdown.
pub fn analyze_timed(
    m: &Matrix,
    opts: &AnalyzeOptions,
) -> Result<(StabilityReport, StageTimings), StabilityError> {
    let t0 = Instant::now();
    let mut warnings = Vec::new();

    let gershgorin = gershgorin_sigma(m)?;

    let cp = coefficient_polynomials(m);
    if let Some(w) = cp.conditioning_warning() {
        warnings.push(w.to_string());
    }
    let t_coeffs = t0.elapsed();

    let omega = omega_set(&cp, opts.tol)?;
    for &i in &omega.zero_polynomials {
        warnings.push(format!(
            "coefficient polynomial p_{i} is identically zero; skipped in Omega"
        ));
    }
    let t_omega = t0.elapsed();

    let critical = critical_sigma(m, opts)?;
    let t_critical = t0.elapsed();

    let CriticalSigma { sigma_star, crossing, certified_interval, spectrum_at_star } = critical;
    if crossing == Crossing::Ambiguous {
        warnings.push(format!(
            "crossing type at sigma_star = {sigma_star} is numerically ambiguous; \
             theorem checks recorded as vacuous"
        ));
    }

    let theorem_tol = opts.theorem_tol;
    let theorem2 = check_theorem2(crossing, sigma_star, omega.max, theorem_tol);
    let corollary = check_corollary(crossing, sigma_star, omega.max, theorem_tol);
    let scaling = check_scaling_relation(m, &cp, theorem_tol)?;
    let sign_changes_verified = verify_sign_changes(&cp, &omega);
    let t_checks = t0.elapsed();

    let report = StabilityReport {
        n: m.n(),
        sigma_star,
        crossing,
        omega,
        gershgorin,
        theorem2,
        corollary,
        scaling,
        sign_changes_verified,
        certified_interval,
        leading_eigenvalues: spectrum_at_star.leading.clone(),
        warnings,
    };
    let timings = StageTimings {
        coefficients_ms: t_coeffs.as_secs_f64() * 1e3,
        omega_ms: (t_omega - t_coeffs).as_secs_f64() * 1e3,
        critical_ms: (t_critical - t_omega).as_secs_f64() * 1e3,
        checks_ms: (t_checks - t_critical).as_secs_f64() * 1e3,
        total_ms: t_checks.as_secs_f64() * 1e3,
    };
    Ok((report, timings))
}

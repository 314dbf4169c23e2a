//! Command-line front end.
//!
//! Two subcommands over matrix files (`.csv` or `.json`):
//!
//! - `sigma-stab analyze <input>` runs the full pipeline and emits a
//!   versioned JSON report (or `--format text` for a human summary);
//! - `sigma-stab sweep <input> --sigma-min A --sigma-max B [--steps K]`
//!   tabulates the abscissa, coefficient values, and coefficient signs over
//!   a sigma grid as CSV.
//!
//! Exit codes: `0` success with every cross-check holding, `2` when the
//! analysis ran but some asserted identity failed numerically, `1` for
//! everything else (I/O, parse, math errors, bad usage).
//!
//! Reports are written atomically (temp file + rename) when `--output` is
//! given; non-finite floats serialize as JSON `null`, flagged in `warnings`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::eig;
use crate::matcore::{build_sigma_matrix, Matrix, SigmaValue};
use crate::sigmacharpoly::coefficient_polynomials;
use crate::stability::{
    analyze_timed, AnalyzeOptions, Sign, StabilityError, StageTimings, SIGN_ZERO_TOL,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(
    name = "sigma-stab",
    version,
    about = "Stability analysis of sigma-scaled matrix families"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: critical sigma, real-root set Omega, cross-checks
    Analyze {
        /// Matrix file (.csv or .json)
        input: PathBuf,
        /// Relative refinement tolerance for roots and bisection
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Relative tolerance for the theorem cross-checks
        #[arg(long, default_value_t = 1e-6)]
        theorem_tol: f64,
        /// Report format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout (atomic)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate abscissa, coefficient values, and signs over a sigma grid
    Sweep {
        /// Matrix file (.csv or .json)
        input: PathBuf,
        /// Low end of the sigma range
        #[arg(long)]
        sigma_min: f64,
        /// High end of the sigma range
        #[arg(long)]
        sigma_max: f64,
        /// Number of grid points (spacing is (max-min)/(steps-1))
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Write the CSV here instead of stdout (atomic)
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too; keep their exit code at 0 and
            // reserve 2 for theorem findings.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Analyze { input, tol, theorem_tol, format, output } => {
            cmd_analyze(&input, tol, theorem_tol, format, output.as_deref())
        }
        Command::Sweep { input, sigma_min, sigma_max, steps, output } => {
            cmd_sweep(&input, sigma_min, sigma_max, steps, output.as_deref())
        }
    }
}

// ── analyze ─────────────────────────────────────────────────────────

#[derive(Serialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub input: InputEcho,
    pub options: OptionsEcho,
    pub n: usize,
    pub sigma_star: f64,
    pub crossing: String,
    pub gershgorin_sigma: f64,
    pub certified_interval: [f64; 2],
    pub leading_eigenvalues: Vec<ComplexDoc>,
    pub coefficient_polynomials: Vec<Vec<f64>>,
    pub omega: OmegaDoc,
    pub theorem2: Theorem2Doc,
    pub corollary: CorollaryDoc,
    pub scaling: ScalingDoc,
    pub sign_changes_verified: bool,
    pub all_checks_hold: bool,
    pub timings_ms: TimingsDoc,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
pub struct InputEcho {
    pub path: String,
    pub format: String,
    pub n: usize,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Serialize)]
pub struct OptionsEcho {
    pub tol: f64,
    pub theorem_tol: f64,
}

#[derive(Serialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct RootDoc {
    pub value: f64,
    pub multiplicity: u32,
    pub residual: f64,
}

#[derive(Serialize)]
pub struct CoeffRootsDoc {
    pub coefficient: usize,
    pub roots: Vec<RootDoc>,
}

#[derive(Serialize)]
pub struct OmegaDoc {
    pub values: Vec<f64>,
    pub max: Option<f64>,
    pub per_coefficient: Vec<CoeffRootsDoc>,
    pub zero_polynomials: Vec<usize>,
}

#[derive(Serialize)]
pub struct Theorem2Doc {
    pub applies: bool,
    pub holds: bool,
    /// `null` when not applicable or not finite.
    pub residual: f64,
}

#[derive(Serialize)]
pub struct CorollaryDoc {
    pub applies: bool,
    pub holds: bool,
    pub slack: f64,
}

#[derive(Serialize)]
pub struct ScalingDoc {
    pub holds: bool,
    pub mbar0_abscissa: f64,
    pub p0_root_match_residual: f64,
    pub det_at_mbar0_abscissa: f64,
}

#[derive(Serialize)]
pub struct TimingsDoc {
    pub coefficients_ms: f64,
    pub omega_ms: f64,
    pub critical_ms: f64,
    pub checks_ms: f64,
    pub total_ms: f64,
}

/// Runs the analysis and assembles the serializable document.
pub fn analyze_document(
    m: &Matrix,
    path: &Path,
    opts: &AnalyzeOptions,
) -> Result<ReportDocument, StabilityError> {
    let (report, timings) = analyze_timed(m, opts)?;
    let cp = coefficient_polynomials(m);

    let mut warnings = report.warnings.clone();
    if report.theorem2.applies && !report.theorem2.residual.is_finite() {
        warnings.push(
            "theorem2 residual is not finite (Omega is empty); serialized as null".to_string(),
        );
    }
    if report.corollary.applies && !report.corollary.slack.is_finite() {
        warnings.push(
            "corollary slack is not finite (Omega is empty); serialized as null".to_string(),
        );
    }

    let format = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => "csv",
        _ => "json",
    };

    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        input: InputEcho {
            path: path.display().to_string(),
            format: format.to_string(),
            n: m.n(),
            matrix: m.rows(),
        },
        options: OptionsEcho { tol: opts.tol, theorem_tol: opts.theorem_tol },
        n: report.n,
        sigma_star: report.sigma_star,
        crossing: report.crossing.to_string(),
        gershgorin_sigma: report.gershgorin,
        certified_interval: [report.certified_interval.0, report.certified_interval.1],
        leading_eigenvalues: report
            .leading_eigenvalues
            .iter()
            .map(|z| ComplexDoc { re: z.re, im: z.im })
            .collect(),
        coefficient_polynomials: cp.polys().iter().map(|p| p.coeffs().to_vec()).collect(),
        omega: OmegaDoc {
            values: report.omega.values.clone(),
            max: report.omega.max,
            per_coefficient: report
                .omega
                .per_coefficient
                .iter()
                .enumerate()
                .map(|(i, list)| CoeffRootsDoc {
                    coefficient: i,
                    roots: list
                        .roots
                        .iter()
                        .map(|r| RootDoc {
                            value: r.value,
                            multiplicity: r.multiplicity,
                            residual: r.residual,
                        })
                        .collect(),
                })
                .collect(),
            zero_polynomials: report.omega.zero_polynomials.clone(),
        },
        theorem2: Theorem2Doc {
            applies: report.theorem2.applies,
            holds: report.theorem2.holds,
            residual: report.theorem2.residual,
        },
        corollary: CorollaryDoc {
            applies: report.corollary.applies,
            holds: report.corollary.holds,
            slack: report.corollary.slack,
        },
        scaling: ScalingDoc {
            holds: report.scaling.holds,
            mbar0_abscissa: report.scaling.mbar0_abscissa,
            p0_root_match_residual: report.scaling.p0_root_match_residual,
            det_at_mbar0_abscissa: report.scaling.det_at_mbar0_abscissa,
        },
        sign_changes_verified: report.sign_changes_verified,
        all_checks_hold: report.all_checks_hold(),
        timings_ms: TimingsDoc {
            coefficients_ms: timings.coefficients_ms,
            omega_ms: timings.omega_ms,
            critical_ms: timings.critical_ms,
            checks_ms: timings.checks_ms,
            total_ms: timings.total_ms,
        },
        warnings,
    })
}

fn cmd_analyze(
    input: &Path,
    tol: f64,
    theorem_tol: f64,
    format: Format,
    output: Option<&Path>,
) -> i32 {
    let m = match Matrix::read_from_path(input) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let opts = AnalyzeOptions { tol, theorem_tol };
    let doc = match analyze_document(&m, input, &opts) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let rendered = match format {
        Format::Json => {
            serde_json::to_string_pretty(&doc).expect("report serialization cannot fail")
        }
        Format::Text => render_text(&doc),
    };
    if let Err(e) = emit(output, &rendered) {
        eprintln!("error: {e}");
        return 1;
    }
    if doc.all_checks_hold {
        0
    } else {
        2
    }
}

/// Human-readable summary of an analysis document.
pub fn render_text(doc: &ReportDocument) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "matrix: {} ({}x{})", doc.input.path, doc.n, doc.n);
    let _ = writeln!(s, "gershgorin sigma: {}", doc.gershgorin_sigma);
    let _ = writeln!(s, "sigma_star: {:.12}", doc.sigma_star);
    let _ = writeln!(
        s,
        "certified interval: [{:.12}, {:.12}]",
        doc.certified_interval[0], doc.certified_interval[1]
    );
    let _ = writeln!(s, "crossing: {}", doc.crossing);
    let leading: Vec<String> = doc
        .leading_eigenvalues
        .iter()
        .map(|z| format!("{:.6}{:+.6}i", z.re, z.im))
        .collect();
    let _ = writeln!(s, "leading eigenvalues: {}", leading.join(", "));
    let omega: Vec<String> = doc.omega.values.iter().map(|v| format!("{v:.10}")).collect();
    let _ = writeln!(
        s,
        "omega ({} values): [{}], max {}",
        doc.omega.values.len(),
        omega.join(", "),
        doc.omega.max.map_or("none".to_string(), |v| format!("{v:.10}"))
    );
    let _ = writeln!(
        s,
        "theorem2 (real crossing => max(Omega) = sigma_star): applies {}, holds {}, residual {:e}",
        doc.theorem2.applies, doc.theorem2.holds, doc.theorem2.residual
    );
    let _ = writeln!(
        s,
        "corollary (complex crossing => max(Omega) <= sigma_star): applies {}, holds {}, slack {:e}",
        doc.corollary.applies, doc.corollary.holds, doc.corollary.slack
    );
    let _ = writeln!(
        s,
        "scaling (eig(Mbar0) vs roots of p_0): holds {}, abscissa {:.10}, match residual {:e}, det at abscissa {:e}",
        doc.scaling.holds,
        doc.scaling.mbar0_abscissa,
        doc.scaling.p0_root_match_residual,
        doc.scaling.det_at_mbar0_abscissa
    );
    let _ = writeln!(s, "sign changes verified: {}", doc.sign_changes_verified);
    for w in &doc.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(
        s,
        "verdict: {}",
        if doc.all_checks_hold { "all checks hold" } else { "CHECK FAILED" }
    );
    s
}

// ── sweep ───────────────────────────────────────────────────────────

/// CSV table over a sigma grid:
/// `sigma,abscissa,p_0,...,p_{n-1},sign_0,...,sign_{n-1}`.
///
/// `steps` is the number of grid points; spacing is
/// `(sigma_max - sigma_min) / (steps - 1)` and both endpoints are included.
pub fn sweep_csv(
    m: &Matrix,
    sigma_min: f64,
    sigma_max: f64,
    steps: usize,
) -> Result<String, StabilityError> {
    assert!(steps >= 2, "sweep needs at least 2 grid points");
    assert!(sigma_max > sigma_min, "empty sweep range");
    let n = m.n();
    let cp = coefficient_polynomials(m);

    let mut out = String::from("sigma,abscissa");
    for i in 0..n {
        out.push_str(&format!(",p_{i}"));
    }
    for i in 0..n {
        out.push_str(&format!(",sign_{i}"));
    }
    out.push('\n');

    let spacing = (sigma_max - sigma_min) / (steps - 1) as f64;
    for k in 0..steps {
        let s = if k == steps - 1 { sigma_max } else { sigma_min + spacing * k as f64 };
        let msig = build_sigma_matrix(m, SigmaValue::new(s)?);
        let abscissa = eig::spectral_abscissa(&msig)?;
        out.push_str(&format!("{s},{abscissa}"));
        let values: Vec<f64> = (0..n).map(|i| cp.poly(i).eval(s)).collect();
        for v in &values {
            out.push_str(&format!(",{v}"));
        }
        for v in &values {
            out.push_str(&format!(",{}", Sign::of(*v, SIGN_ZERO_TOL)));
        }
        out.push('\n');
    }
    Ok(out)
}

fn cmd_sweep(
    input: &Path,
    sigma_min: f64,
    sigma_max: f64,
    steps: usize,
    output: Option<&Path>,
) -> i32 {
    let m = match Matrix::read_from_path(input) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if steps < 2 {
        eprintln!("error: --steps must be at least 2");
        return 1;
    }
    if !(sigma_max > sigma_min) {
        eprintln!("error: --sigma-max must exceed --sigma-min");
        return 1;
    }
    let csv = match sweep_csv(&m, sigma_min, sigma_max, steps) {
        Ok(csv) => csv,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Err(e) = emit(output, &csv) {
        eprintln!("error: {e}");
        return 1;
    }
    0
}

// ── output plumbing ─────────────────────────────────────────────────

fn emit(output: Option<&Path>, contents: &str) -> std::io::Result<()> {
    match output {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            if !contents.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

/// Write-to-temp-then-rename in the destination directory, so readers never
/// observe a partial file.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "not a file path"))?;
    let mut tmp = std::ffi::OsString::from(file_name);
    tmp.push(&format!(".tmp{}", std::process::id()));
    let tmp_path = match dir {
        Some(d) => d.join(&tmp),
        None => PathBuf::from(&tmp),
    };
    std::fs::write(&tmp_path, contents)?;
    match std::fs::rename(&tmp_path, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = std::fs::remove_file(&tmp_path);
            Err(e)
        }
    }
}

/// Re-exported for callers that want the raw timings shape.
pub type Timings = StageTimings;

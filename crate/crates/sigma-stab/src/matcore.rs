//! Dense real square matrices and the sigma-scaled constructions built on
//! them.
//!
//! The central objects are [`Matrix`] (row-major, validated on construction)
//! and the two derived matrices of the theory:
//!
//! - [`build_sigma_matrix`]: `M_sigma = M - (1 - sigma) * D`, i.e. `M` with
//!   every diagonal entry `m[i][i]` replaced by `sigma * m[i][i]`;
//! - [`build_mbar0`]: `Mbar0 = I - D^{-1} M`, the scaling companion whose
//!   eigenvalues coincide with the roots of the constant coefficient `p_0`.
//!
//! [`gershgorin_sigma`] gives the diagonal-dominance threshold: for any
//! `sigma` beyond it, all Gershgorin row discs of `M_sigma` lie strictly in
//! the open left half-plane. Row discs only; column discs would be a possible
//! sharpening but are not used here.
//!
//! Matrix files are read in two formats shared with the CLI: CSV (`n` rows of
//! `n` comma-separated decimals) and JSON (`{"n": 2, "entries": [[..],[..]]}`).
//! Ragged rows and non-finite entries are rejected.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Error type for matrix construction, parsing, and the derived operations.
///
/// Row/column numbers in errors are 1-based, matching how they are reported
/// to users.
#[derive(Debug, Clone, PartialEq)]
pub enum MatError {
    /// Matrix has zero rows.
    Empty,
    /// Row and column counts differ.
    NotSquare { rows: usize, cols: usize },
    /// A row's length differs from the first row's.
    RaggedRow { row: usize, expected: usize, got: usize },
    /// Entry is NaN or infinite.
    NonFinite { row: usize, col: usize },
    /// A CSV token failed to parse as a decimal number.
    InvalidNumber { row: usize, col: usize, token: String },
    /// Flat buffer length does not match `n * n`.
    InvalidData { expected: usize, got: usize },
    /// Diagonal entry is exactly zero where `D` must be inverted.
    ZeroDiagonal { row: usize },
    /// Diagonal entry is `>= 0` where a negative diagonal is required.
    NonNegativeDiagonal { row: usize },
    /// Sigma value is NaN or infinite.
    NonFiniteSigma,
    /// The declared `n` in a JSON matrix disagrees with the entries.
    DimensionMismatch { declared: usize, got: usize },
    /// File could not be read.
    Io { path: String, msg: String },
    /// JSON document failed to parse.
    Json { msg: String },
    /// File extension is neither `.csv` nor `.json`.
    UnknownFormat { path: String },
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::Empty => write!(f, "matrix has no rows"),
            MatError::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            MatError::RaggedRow { row, expected, got } => {
                write!(f, "ragged row {row}: expected {expected} entries, got {got}")
            }
            MatError::NonFinite { row, col } => {
                write!(f, "non-finite entry at row {row}, column {col}")
            }
            MatError::InvalidNumber { row, col, token } => {
                write!(f, "row {row}, column {col}: cannot parse {token:?} as a number")
            }
            MatError::InvalidData { expected, got } => {
                write!(f, "flat data length mismatch: expected {expected}, got {got}")
            }
            MatError::ZeroDiagonal { row } => {
                write!(f, "diagonal entry in row {row} is zero; D is not invertible")
            }
            MatError::NonNegativeDiagonal { row } => {
                write!(f, "diagonal entry in row {row} is >= 0; negative diagonal required")
            }
            MatError::NonFiniteSigma => write!(f, "sigma must be finite"),
            MatError::DimensionMismatch { declared, got } => {
                write!(f, "declared n = {declared} but entries describe {got} rows")
            }
            MatError::Io { path, msg } => write!(f, "cannot read {path}: {msg}"),
            MatError::Json { msg } => write!(f, "invalid JSON matrix: {msg}"),
            MatError::UnknownFormat { path } => {
                write!(f, "unrecognized matrix format for {path}: expected .csv or .json")
            }
        }
    }
}

impl std::error::Error for MatError {}

/// The diagonal scaling parameter, validated to be finite.
///
/// The theory admits complex sigma in the definition of `M_sigma`, but every
/// result used here restricts it to the real axis, so this type fixes
/// `sigma` real. Complex sigma is intentionally unsupported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaValue(f64);

impl SigmaValue {
    pub fn new(sigma: f64) -> Result<Self, MatError> {
        if sigma.is_finite() {
            Ok(SigmaValue(sigma))
        } else {
            Err(MatError::NonFiniteSigma)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A dense real square matrix, stored row-major.
///
/// Invariants enforced at construction: `n >= 1`, all entries finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    n: usize,
    entries: Vec<f64>,
}

/// Wire form of a matrix: `{"n": 2, "entries": [[-1.0, 2.0], [2.0, -1.0]]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<f64>>,
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = MatError;

    fn try_from(doc: MatrixJson) -> Result<Self, MatError> {
        if doc.entries.len() != doc.n {
            return Err(MatError::DimensionMismatch {
                declared: doc.n,
                got: doc.entries.len(),
            });
        }
        Matrix::from_rows(&doc.entries)
    }
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> MatrixJson {
        MatrixJson {
            n: m.n,
            entries: m.rows(),
        }
    }
}

impl Matrix {
    /// Builds a matrix from row slices, validating squareness and finiteness.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                // Distinguish a consistently rectangular input from a ragged one.
                if i > 0 && row.len() != rows[0].as_ref().len() {
                    return Err(MatError::RaggedRow {
                        row: i + 1,
                        expected: rows[0].as_ref().len(),
                        got: row.len(),
                    });
                }
                return Err(MatError::NotSquare { rows: n, cols: row.len() });
            }
            entries.extend_from_slice(row);
        }
        Self::from_flat(n, entries)
    }

    /// Builds a matrix from a row-major flat buffer of length `n * n`.
    pub fn from_flat(n: usize, entries: Vec<f64>) -> Result<Self, MatError> {
        if n == 0 {
            return Err(MatError::Empty);
        }
        if entries.len() != n * n {
            return Err(MatError::InvalidData { expected: n * n, got: entries.len() });
        }
        for (k, &v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(MatError::NonFinite { row: k / n + 1, col: k % n + 1 });
            }
        }
        Ok(Matrix { n, entries })
    }

    /// Builds the diagonal matrix `diag(d_1, ..., d_n)`.
    pub fn diagonal(diag: &[f64]) -> Result<Self, MatError> {
        let n = diag.len();
        let mut entries = vec![0.0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self::from_flat(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Row-major flat view of the entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    /// The entries as owned rows (used by the JSON echo).
    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// The diagonal `(m_11, ..., m_nn)`.
    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Determinant via LU factorization with partial pivoting.
    ///
    /// Returns `0.0` when a pivot column is exactly zero.
    pub fn det_lu(&self) -> f64 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1.0;
        for k in 0..n {
            let mut piv = k;
            let mut max = a[k * n + k].abs();
            for i in (k + 1)..n {
                let v = a[i * n + k].abs();
                if v > max {
                    max = v;
                    piv = i;
                }
            }
            if max == 0.0 {
                return 0.0;
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            det *= a[k * n + k];
            for i in (k + 1)..n {
                let factor = a[i * n + k] / a[k * n + k];
                for j in (k + 1)..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
        det
    }

    // ── File formats ────────────────────────────────────────────────

    /// Parses the CSV matrix format: `n` lines of `n` comma-separated decimals.
    pub fn from_csv_str(text: &str) -> Result<Self, MatError> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for (j, token) in line.split(',').enumerate() {
                let token = token.trim();
                let v: f64 = token.parse().map_err(|_| MatError::InvalidNumber {
                    row: i + 1,
                    col: j + 1,
                    token: token.to_string(),
                })?;
                if !v.is_finite() {
                    return Err(MatError::NonFinite { row: i + 1, col: j + 1 });
                }
                row.push(v);
            }
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(MatError::RaggedRow {
                        row: i + 1,
                        expected: first.len(),
                        got: row.len(),
                    });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(MatError::Empty);
        }
        if rows[0].len() != rows.len() {
            return Err(MatError::NotSquare { rows: rows.len(), cols: rows[0].len() });
        }
        Self::from_rows(&rows)
    }

    /// Parses the JSON matrix format `{"n": .., "entries": [[..], ..]}`.
    pub fn from_json_str(text: &str) -> Result<Self, MatError> {
        serde_json::from_str(text).map_err(|e| match e.classify() {
            serde_json::error::Category::Data => {
                // try_from errors surface through serde's Data category; keep
                // the message it carries.
                MatError::Json { msg: e.to_string() }
            }
            _ => MatError::Json { msg: e.to_string() },
        })
    }

    /// Reads a matrix file, picking the parser from the extension
    /// (`.csv` or `.json`).
    pub fn read_from_path(path: &Path) -> Result<Self, MatError> {
        let text = std::fs::read_to_string(path).map_err(|e| MatError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Self::from_csv_str(&text),
            Some(ext) if ext.eq_ignore_ascii_case("json") => Self::from_json_str(&text),
            _ => Err(MatError::UnknownFormat { path: path.display().to_string() }),
        }
    }

    /// Serializes to the JSON matrix format.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }
}

/// Builds `M_sigma`: every diagonal entry of `M` scaled by `sigma`,
/// off-diagonal entries untouched.
pub fn build_sigma_matrix(m: &Matrix, sigma: SigmaValue) -> Matrix {
    let n = m.n();
    let mut entries = m.entries.clone();
    for i in 0..n {
        entries[i * n + i] = sigma.value() * m.get(i, i);
    }
    Matrix { n, entries }
}

/// Builds the scaling companion `Mbar0 = I - D^{-1} M`, where `D` is the
/// diagonal of `M`. Entry `(i, j)` is `delta_ij - m[i][j] / m[i][i]`, so the
/// diagonal of the result is exactly zero.
pub fn build_mbar0(m: &Matrix) -> Result<Matrix, MatError> {
    let n = m.n();
    for i in 0..n {
        if m.get(i, i) == 0.0 {
            return Err(MatError::ZeroDiagonal { row: i + 1 });
        }
    }
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let d = m.get(i, i);
        for j in 0..n {
            entries[i * n + j] = if i == j { 0.0 } else { -m.get(i, j) / d };
        }
    }
    Ok(Matrix { n, entries })
}

/// Diagonal-dominance threshold `sigma_G = max_i (sum_{j != i} |m[i][j]|) / (-m[i][i])`.
///
/// Requires every diagonal entry to be negative. For any `sigma > sigma_G`
/// every Gershgorin row disc of `M_sigma` lies strictly in the open left
/// half-plane, so the spectral abscissa is negative.
pub fn gershgorin_sigma(m: &Matrix) -> Result<f64, MatError> {
    let n = m.n();
    for i in 0..n {
        if m.get(i, i) >= 0.0 {
            return Err(MatError::NonNegativeDiagonal { row: i + 1 });
        }
    }
    let mut bound: f64 = 0.0;
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| m.get(i, j).abs()).sum();
        bound = bound.max(off / -m.get(i, i));
    }
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn sigma_one_is_identity_on_m() {
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        let m1 = build_sigma_matrix(&m, SigmaValue::new(1.0).unwrap());
        assert_eq!(m, m1);
    }

    #[test]
    fn sigma_two_scales_diagonal() {
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        let m2 = build_sigma_matrix(&m, SigmaValue::new(2.0).unwrap());
        assert_eq!(m2, mat(&[&[-2.0, 2.0], &[2.0, -2.0]]));
    }

    #[test]
    fn sigma_zero_zeroes_diagonal() {
        let m = mat(&[&[-3.0]]);
        let m0 = build_sigma_matrix(&m, SigmaValue::new(0.0).unwrap());
        assert_eq!(m0.get(0, 0), 0.0);
    }

    #[test]
    fn mbar0_of_diagonal_matrix_is_zero() {
        let m = Matrix::diagonal(&[-1.0, -2.0, -3.0]).unwrap();
        let mb = build_mbar0(&m).unwrap();
        assert!(mb.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn mbar0_hand_example() {
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        let mb = build_mbar0(&m).unwrap();
        assert_eq!(mb, mat(&[&[0.0, 2.0], &[2.0, 0.0]]));
    }

    #[test]
    fn mbar0_rejects_zero_diagonal() {
        let m = mat(&[&[0.0, 1.0], &[1.0, -1.0]]);
        assert_eq!(build_mbar0(&m).unwrap_err(), MatError::ZeroDiagonal { row: 1 });
    }

    #[test]
    fn mbar0_diagonal_always_zero() {
        let m = mat(&[&[-2.0, 3.0, 1.0], &[0.5, -0.25, 4.0], &[1.0, 1.0, -7.0]]);
        let mb = build_mbar0(&m).unwrap();
        for i in 0..3 {
            assert_eq!(mb.get(i, i), 0.0);
        }
    }

    #[test]
    fn gershgorin_hand_example() {
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        assert_eq!(gershgorin_sigma(&m).unwrap(), 2.0);
    }

    #[test]
    fn gershgorin_diagonal_matrix_is_zero() {
        let m = Matrix::diagonal(&[-1.0, -2.0, -3.0]).unwrap();
        assert_eq!(gershgorin_sigma(&m).unwrap(), 0.0);
    }

    #[test]
    fn gershgorin_rejects_nonnegative_diagonal() {
        let m = mat(&[&[1.0, 0.0], &[0.0, -1.0]]);
        assert_eq!(
            gershgorin_sigma(&m).unwrap_err(),
            MatError::NonNegativeDiagonal { row: 1 }
        );
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = Matrix::from_rows(&[&[1.0, f64::NAN], &[0.0, 1.0]]).unwrap_err();
        assert_eq!(err, MatError::NonFinite { row: 1, col: 2 });
    }

    #[test]
    fn rejects_empty_and_non_square() {
        assert_eq!(Matrix::from_rows::<Vec<f64>>(&[]).unwrap_err(), MatError::Empty);
        let err = Matrix::from_rows(&[&[1.0, 2.0][..], &[3.0, 4.0][..], &[5.0, 6.0][..]])
            .unwrap_err();
        assert_eq!(err, MatError::NotSquare { rows: 3, cols: 2 });
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let m = Matrix::from_csv_str("-1, 2\n2, -1\n").unwrap();
        assert_eq!(m, mat(&[&[-1.0, 2.0], &[2.0, -1.0]]));

        let ragged = Matrix::from_csv_str("1,2\n3\n").unwrap_err();
        assert_eq!(ragged, MatError::RaggedRow { row: 2, expected: 2, got: 1 });

        let bad = Matrix::from_csv_str("1,x\n3,4\n").unwrap_err();
        assert_eq!(
            bad,
            MatError::InvalidNumber { row: 1, col: 2, token: "x".to_string() }
        );
    }

    #[test]
    fn json_round_trip() {
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        let text = m.to_json_string();
        let back = Matrix::from_json_str(&text).unwrap();
        assert_eq!(m, back);
        // bit-for-bit echo round trip
        assert_eq!(m.as_slice(), back.as_slice());
    }

    #[test]
    fn json_rejects_mismatched_n() {
        let err = Matrix::from_json_str(r#"{"n": 3, "entries": [[1.0, 2.0], [3.0, 4.0]]}"#)
            .unwrap_err();
        assert!(matches!(err, MatError::Json { .. }));
    }

    #[test]
    fn det_lu_small_cases() {
        let m = mat(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        assert!((m.det_lu() - (-3.0)).abs() < 1e-12);
        let d = Matrix::diagonal(&[-1.0, -2.0, -3.0]).unwrap();
        assert!((d.det_lu() - (-6.0)).abs() < 1e-12);
        let singular = mat(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(singular.det_lu().abs() < 1e-12);
    }

    #[test]
    fn sigma_value_rejects_non_finite() {
        assert!(SigmaValue::new(f64::INFINITY).is_err());
        assert!(SigmaValue::new(f64::NAN).is_err());
        assert_eq!(SigmaValue::new(2.5).unwrap().value(), 2.5);
    }
}

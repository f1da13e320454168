//! Depth of an inclusion matrix.
//!
//! For a nonnegative integer matrix `M` (rows indexed by the irreducibles of
//! the subalgebra, columns by those of the overalgebra) the alternating
//! products are
//!
//! ```text
//! M(0) = I,  M(1) = M,  M(2n) = (M Mᵀ)ⁿ,  M(2n+1) = (M Mᵀ)ⁿ M.
//! ```
//!
//! Every criterion below compares zero patterns only. For nonnegative
//! matrices the support of a product is the boolean product of the supports,
//! so the searches run on [`SupportMatrix`] and exact entries are only kept
//! for diagnostics.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is not irredundant: {0}")]
    NotIrredundant(String),
    #[error("zero pattern did not stabilize within {0} steps")]
    NoStabilization(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Dense matrix of arbitrary-precision nonnegative integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NonnegMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigUint>,
}

impl NonnegMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigUint>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    expected: ncols,
                    got: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| BigUint::from(x)));
        }
        Self::new(nrows, ncols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigUint::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigUint::one();
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigUint] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries as `u64`, or `None` if any entry overflows.
    pub fn to_u64_rows(&self) -> Option<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_u64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut entries = vec![BigUint::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Permutes rows and columns: result(i, j) = self(row_perm[i], col_perm[j]).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in row_perm {
            for &j in col_perm {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn support(&self) -> SupportMatrix {
        SupportMatrix {
            rows: self.rows,
            cols: self.cols,
            bits: self.entries.iter().map(|x| !x.is_zero()).collect(),
        }
    }

    /// `S = M Mᵀ`, indexed by rows of `M`.
    pub fn row_gram(&self) -> Self {
        self.mul(&self.transpose()).expect("shapes agree")
    }

    /// `T = Mᵀ M`, indexed by columns of `M`.
    pub fn col_gram(&self) -> Self {
        self.transpose().mul(self).expect("shapes agree")
    }

    /// Parses one row per line, comma separated. Blank lines are skipped.
    pub fn from_csv(text: &str) -> Result<Self, MatrixError> {
        let mut rows: Vec<Vec<BigUint>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|field| {
                    let field = field.trim();
                    BigUint::parse_bytes(field.as_bytes(), 10).ok_or_else(|| MatrixError::Parse {
                        line: lineno + 1,
                        msg: format!("not a nonnegative integer: {field:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(MatrixError::RaggedRow {
                        row: rows.len(),
                        expected: first.len(),
                        got: row.len(),
                    });
                }
            }
            rows.push(row);
        }
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self, MatrixError> {
        serde_json::from_str(text).map_err(|e| MatrixError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }
}

impl fmt::Debug for NonnegMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "NonnegMatrix{rows:?}")
    }
}

/// JSON entries are plain numbers when they fit in `u64`, decimal strings
/// otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonEntry {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<JsonEntry>>,
}

impl Serialize for NonnegMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| match x.to_u64() {
                        Some(v) => JsonEntry::Small(v),
                        None => JsonEntry::Big(x.to_string()),
                    })
                    .collect()
            })
            .collect();
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NonnegMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows {
            return Err(D::Error::custom(format!(
                "expected {} rows, got {}",
                raw.rows,
                raw.entries.len()
            )));
        }
        let mut entries = Vec::with_capacity(raw.rows * raw.cols);
        for (i, row) in raw.entries.into_iter().enumerate() {
            if row.len() != raw.cols {
                return Err(D::Error::custom(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    raw.cols
                )));
            }
            for e in row {
                entries.push(match e {
                    JsonEntry::Small(v) => BigUint::from(v),
                    JsonEntry::Big(s) => BigUint::parse_bytes(s.as_bytes(), 10)
                        .ok_or_else(|| D::Error::custom(format!("bad entry {s:?}")))?,
                });
            }
        }
        NonnegMatrix::new(raw.rows, raw.cols, entries).map_err(D::Error::custom)
    }
}

/// Zero pattern of a nonnegative matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SupportMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl SupportMatrix {
    pub fn identity(n: usize) -> Self {
        let mut bits = vec![false; n * n];
        for i in 0..n {
            bits[i * n + i] = true;
        }
        Self {
            rows: n,
            cols: n,
            bits,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn count_zeros(&self) -> usize {
        self.bits.iter().filter(|b| !**b).count()
    }

    pub fn transpose(&self) -> Self {
        let mut bits = Vec::with_capacity(self.bits.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                bits.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            bits,
        }
    }

    /// Boolean product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "support product shape mismatch");
        let mut bits = vec![false; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if !self.get(i, k) {
                    continue;
                }
                let out = &mut bits[i * other.cols..(i + 1) * other.cols];
                for (j, slot) in out.iter_mut().enumerate() {
                    *slot |= other.get(k, j);
                }
            }
        }
        Self {
            rows: self.rows,
            cols: other.cols,
            bits,
        }
    }

    /// `self ⊆ other` entrywise.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b)
    }
}

impl fmt::Debug for SupportMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SupportMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '#' } else { '.' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub min_depth: u64,
    pub min_odd_depth: u64,
    pub min_h_depth: u64,
    pub module_depth_q: u64,
    /// Least `n` with `supp(Sⁿ) = supp(Sⁿ⁺¹)`.
    #[serde(rename = "s_exponent")]
    pub s_stabilization_exponent: u64,
    /// Least `n` with `supp(Tⁿ) = supp(Tⁿ⁺¹)`.
    #[serde(rename = "t_exponent")]
    pub t_stabilization_exponent: u64,
    #[serde(skip)]
    pub s_matrix: Option<NonnegMatrix>,
    #[serde(skip)]
    pub t_matrix: Option<NonnegMatrix>,
}

/// True iff every row and every column has a nonzero entry.
pub fn irredundant(m: &NonnegMatrix) -> bool {
    irredundancy_defect(m).is_none()
}

fn irredundancy_defect(m: &NonnegMatrix) -> Option<String> {
    if let Some(i) = (0..m.rows).find(|&i| m.row(i).iter().all(Zero::is_zero)) {
        return Some(format!("row {i} is zero"));
    }
    if let Some(j) = (0..m.cols).find(|&j| (0..m.rows).all(|i| m.get(i, j).is_zero())) {
        return Some(format!("column {j} is zero"));
    }
    None
}

fn require_irredundant(m: &NonnegMatrix) -> Result<(), MatrixError> {
    match irredundancy_defect(m) {
        Some(msg) => Err(MatrixError::NotIrredundant(msg)),
        None => Ok(()),
    }
}

/// Upper bound on the number of steps any stabilization search may take.
pub fn stabilization_bound(m: &NonnegMatrix) -> usize {
    2 * (m.rows + m.cols) + 1
}

/// `M(m)`: `(M Mᵀ)ⁿ` for `m = 2n`, `(M Mᵀ)ⁿ M` for `m = 2n + 1`.
pub fn alternating_power(m: &NonnegMatrix, exponent: usize) -> NonnegMatrix {
    let mt = m.transpose();
    let mut acc = NonnegMatrix::identity(m.rows);
    for k in 0..exponent {
        let factor = if k % 2 == 0 { m } else { &mt };
        acc = acc.mul(factor).expect("alternating shapes agree");
    }
    acc
}

/// Least `n ≥ 0` with `supp(Xⁿ) = supp(Xⁿ⁺¹)`, `X⁰ = I`.
fn gram_stabilization(gram: &SupportMatrix, bound: usize) -> Result<u64, MatrixError> {
    let mut power = SupportMatrix::identity(gram.rows);
    for n in 0..=bound {
        let next = power.mul(gram);
        if next == power {
            return Ok(n as u64);
        }
        power = next;
    }
    Err(MatrixError::NoStabilization(bound))
}

fn s_support(m: &NonnegMatrix) -> SupportMatrix {
    let supp = m.support();
    supp.mul(&supp.transpose())
}

fn t_support(m: &NonnegMatrix) -> SupportMatrix {
    let supp = m.support();
    supp.transpose().mul(&supp)
}

/// Least odd `2n + 1` with `supp(Sⁿ) = supp(Sⁿ⁺¹)`, `S = M Mᵀ`.
pub fn min_odd_depth(m: &NonnegMatrix) -> Result<u64, MatrixError> {
    require_irredundant(m)?;
    let n = gram_stabilization(&s_support(m), stabilization_bound(m))?;
    Ok(2 * n + 1)
}

/// Least odd `2n + 1` with `supp(Tⁿ) = supp(Tⁿ⁺¹)`, `T = Mᵀ M`.
pub fn min_h_depth(m: &NonnegMatrix) -> Result<u64, MatrixError> {
    require_irredundant(m)?;
    let n = gram_stabilization(&t_support(m), stabilization_bound(m))?;
    Ok(2 * n + 1)
}

/// Least `m ≥ 1` with `supp(M(m+1)) = supp(M(m-1))`.
pub fn min_depth(m: &NonnegMatrix) -> Result<u64, MatrixError> {
    require_irredundant(m)?;
    let supp = m.support();
    let supp_t = supp.transpose();
    let bound = stabilization_bound(m);
    // powers[k] = supp(M(k)); only the last three are live.
    let mut prev = SupportMatrix::identity(m.rows);
    let mut cur = supp.clone();
    for depth in 1..=bound {
        let factor = if depth % 2 == 0 { &supp } else { &supp_t };
        let next = cur.mul(factor);
        if next == prev {
            return Ok(depth as u64);
        }
        prev = cur;
        cur = next;
    }
    Err(MatrixError::NoStabilization(bound))
}

/// Depth of the quotient module: `(min_h_depth - 1) / 2`.
pub fn module_depth_q(m: &NonnegMatrix) -> Result<u64, MatrixError> {
    Ok((min_h_depth(m)? - 1) / 2)
}

pub fn depth_report(m: &NonnegMatrix) -> Result<DepthReport, MatrixError> {
    require_irredundant(m)?;
    let bound = stabilization_bound(m);
    let s_exp = gram_stabilization(&s_support(m), bound)?;
    let t_exp = gram_stabilization(&t_support(m), bound)?;
    let report = DepthReport {
        min_depth: min_depth(m)?,
        min_odd_depth: 2 * s_exp + 1,
        min_h_depth: 2 * t_exp + 1,
        module_depth_q: t_exp,
        s_stabilization_exponent: s_exp,
        t_stabilization_exponent: t_exp,
        s_matrix: Some(m.row_gram()),
        t_matrix: Some(m.col_gram()),
    };
    debug_assert!(
        report.min_odd_depth == report.min_depth || report.min_odd_depth == report.min_depth + 1
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[u64]]) -> NonnegMatrix {
        NonnegMatrix::from_rows(rows).unwrap()
    }

    fn sigma2_in_sigma3() -> NonnegMatrix {
        mat(&[&[1, 1, 0], &[0, 1, 1]])
    }

    fn a3_in_s3() -> NonnegMatrix {
        mat(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 1]])
    }

    #[test]
    fn irredundant_examples() {
        assert!(irredundant(&mat(&[&[1, 1], &[0, 1]])));
        assert!(!irredundant(&mat(&[&[0, 0], &[1, 1]])));
        assert!(!irredundant(&mat(&[&[1, 0], &[1, 0]])));
    }

    #[test]
    fn alternating_power_examples() {
        let m = sigma2_in_sigma3();
        assert_eq!(alternating_power(&m, 0), NonnegMatrix::identity(2));
        assert_eq!(alternating_power(&m, 1), m);
        assert_eq!(alternating_power(&m, 2), mat(&[&[2, 1], &[1, 2]]));
        assert_eq!(alternating_power(&m, 3), mat(&[&[2, 3, 1], &[1, 3, 2]]));
    }

    #[test]
    fn depth_examples() {
        let id = NonnegMatrix::identity(3);
        assert_eq!(min_odd_depth(&id).unwrap(), 1);
        assert_eq!(min_h_depth(&id).unwrap(), 1);
        assert_eq!(min_depth(&id).unwrap(), 1);
        assert_eq!(module_depth_q(&id).unwrap(), 0);

        let m = sigma2_in_sigma3();
        assert_eq!(min_odd_depth(&m).unwrap(), 3);
        assert_eq!(min_h_depth(&m).unwrap(), 5);
        assert_eq!(min_depth(&m).unwrap(), 3);
        assert_eq!(module_depth_q(&m).unwrap(), 2);

        let m = a3_in_s3();
        assert_eq!(min_odd_depth(&m).unwrap(), 3);
        assert_eq!(min_h_depth(&m).unwrap(), 3);
        assert_eq!(min_depth(&m).unwrap(), 2);
        assert_eq!(module_depth_q(&m).unwrap(), 1);
    }

    #[test]
    fn redundant_matrices_are_rejected() {
        let m = mat(&[&[1, 0], &[1, 0]]);
        assert!(matches!(min_depth(&m), Err(MatrixError::NotIrredundant(_))));
        assert!(matches!(min_odd_depth(&m), Err(MatrixError::NotIrredundant(_))));
        assert!(matches!(min_h_depth(&m), Err(MatrixError::NotIrredundant(_))));
        assert!(matches!(depth_report(&m), Err(MatrixError::NotIrredundant(_))));
    }

    #[test]
    fn report_matches_individual_ops() {
        let m = sigma2_in_sigma3();
        let r = depth_report(&m).unwrap();
        assert_eq!(
            (r.min_depth, r.min_odd_depth, r.min_h_depth, r.module_depth_q),
            (3, 3, 5, 2)
        );
        assert_eq!(r.s_stabilization_exponent, 1);
        assert_eq!(r.t_stabilization_exponent, 2);
        assert_eq!(r.s_matrix.unwrap(), mat(&[&[2, 1], &[1, 2]]));
        assert_eq!(
            r.t_matrix.unwrap(),
            mat(&[&[1, 1, 0], &[1, 2, 1], &[0, 1, 1]])
        );
    }

    #[test]
    fn report_json_keys() {
        let r = depth_report(&a3_in_s3()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "min_depth",
                "min_h_depth",
                "min_odd_depth",
                "module_depth_q",
                "s_exponent",
                "t_exponent"
            ]
        );
    }

    #[test]
    fn csv_and_json_parse() {
        let m = NonnegMatrix::from_csv("1,1,0\n0, 1 ,1\n\n").unwrap();
        assert_eq!(m, sigma2_in_sigma3());
        assert_eq!(NonnegMatrix::from_csv(&m.to_csv()).unwrap(), m);
        assert!(matches!(
            NonnegMatrix::from_csv("1,2\n3"),
            Err(MatrixError::RaggedRow { .. })
        ));
        assert!(matches!(
            NonnegMatrix::from_csv("1,-2"),
            Err(MatrixError::Parse { line: 1, .. })
        ));
        assert!(matches!(NonnegMatrix::from_csv(""), Err(MatrixError::Empty)));

        let j = NonnegMatrix::from_json(r#"{"rows":2,"cols":3,"entries":[[1,1,0],[0,1,1]]}"#)
            .unwrap();
        assert_eq!(j, sigma2_in_sigma3());
        assert!(NonnegMatrix::from_json(r#"{"rows":2,"cols":3,"entries":[[1,1,0]]}"#).is_err());
        assert!(NonnegMatrix::from_json(r#"{"rows":1,"cols":2,"entries":[[1,-1]]}"#).is_err());
    }

    #[test]
    fn big_entries_survive_json() {
        let big = BigUint::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let m = NonnegMatrix::new(1, 2, vec![big, BigUint::one()]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"123456789012345678901234567890\""));
        assert_eq!(NonnegMatrix::from_json(&text).unwrap(), m);
    }
}

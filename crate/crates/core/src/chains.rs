//! Subgroup chains with closed-form depths.
//!
//! The symmetric chain `Σₙ ⊂ Σₙ₊₁` has the Young branching graph as inclusion
//! matrix, which gives a fast path that never touches a character table. The
//! alternating and twisted symmetric chains are closed forms only.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::matdepth::{min_depth, min_odd_depth, NonnegMatrix};
use crate::modp::ceil_sqrt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("{family} chain formula needs n >= {min}, got {n}")]
    OutOfRange {
        family: &'static str,
        min: u64,
        n: u64,
    },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `other` arises from `self` by adding one box.
    pub fn covered_by(&self, other: &Partition) -> bool {
        other.n() == self.n() + 1 && (0..other.parts.len()).all(|i| self.part(i) <= other.part(i))
            && self.parts.len() <= other.parts.len()
    }

    /// Number of distinct part sizes.
    pub fn distinct_parts(&self) -> usize {
        let mut v = self.parts.clone();
        v.dedup();
        v.len()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// All partitions of `n`, reverse-lexicographic: `(n), (n-1,1), …, (1ⁿ)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingMatrix {
    pub row_labels: Vec<Partition>,
    pub col_labels: Vec<Partition>,
    pub matrix: NonnegMatrix,
}

/// Add-one-box incidence between partitions of `n` (rows) and `n + 1` (columns).
pub fn young_branching_matrix(n: usize) -> BranchingMatrix {
    let row_labels = partitions(n);
    let col_labels = partitions(n + 1);
    let rows: Vec<Vec<u64>> = row_labels
        .iter()
        .map(|lam| col_labels.iter().map(|mu| u64::from(lam.covered_by(mu))).collect())
        .collect();
    let matrix = NonnegMatrix::from_rows(&rows).expect("partition lists are nonempty");
    BranchingMatrix {
        row_labels,
        col_labels,
        matrix,
    }
}

/// Depth of `Σₙ ⊂ Σₙ₊₁`: `2n − 1`.
pub fn sym_chain_depth(n: u64) -> Result<u64, ChainError> {
    if n < 1 {
        return Err(ChainError::OutOfRange {
            family: "symmetric",
            min: 1,
            n,
        });
    }
    Ok(2 * n - 1)
}

/// Depth of `Aₙ ⊂ Aₙ₊₁`: `2(n − ⌈√n⌉) + 1`.
pub fn alt_chain_depth(n: u64) -> Result<u64, ChainError> {
    if n < 2 {
        return Err(ChainError::OutOfRange {
            family: "alternating",
            min: 2,
            n,
        });
    }
    Ok(2 * (n - ceil_sqrt(n)) + 1)
}

/// Least `k` with `k(k+1) ≥ 2n`, i.e. `⌈(√(8n+1) − 1)/2⌉`.
pub fn triangular_ceiling(n: u64) -> u64 {
    let mut k = 0;
    while k * (k + 1) < 2 * n {
        k += 1;
    }
    k
}

/// Depth of the twisted chain `ℂ_α Σₙ ⊂ ℂ_α Σₙ₊₁`: `2(n − k) + 1`, `k` as in
/// [`triangular_ceiling`].
pub fn danz_twisted_depth(n: u64) -> Result<u64, ChainError> {
    if n < 2 {
        return Err(ChainError::OutOfRange {
            family: "twisted-sym",
            min: 2,
            n,
        });
    }
    Ok(2 * (n - triangular_ceiling(n)) + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainConsistency {
    pub n: u64,
    pub sym: u64,
    pub alt: u64,
    pub twisted_sym: u64,
    pub matrix_depth: u64,
    pub matrix_odd_depth: u64,
}

/// Twisted ≤ symmetric, twisted ≤ alternating, and the branching matrix
/// realizes the symmetric closed form.
pub fn chain_consistency(n: u64) -> Result<ChainConsistency, ChainError> {
    let sym = sym_chain_depth(n)?;
    let alt = alt_chain_depth(n)?;
    let twisted_sym = danz_twisted_depth(n)?;
    let branching = young_branching_matrix(n as usize);
    let matrix_depth = min_depth(&branching.matrix)
        .map_err(|e| ChainError::TheoremViolation(format!("branching matrix: {e}")))?;
    let matrix_odd_depth = min_odd_depth(&branching.matrix)
        .map_err(|e| ChainError::TheoremViolation(format!("branching matrix: {e}")))?;
    if twisted_sym > sym {
        return Err(ChainError::TheoremViolation(format!(
            "twisted depth {twisted_sym} exceeds symmetric depth {sym} at n = {n}"
        )));
    }
    if twisted_sym > alt {
        return Err(ChainError::TheoremViolation(format!(
            "twisted depth {twisted_sym} exceeds alternating depth {alt} at n = {n}"
        )));
    }
    if matrix_depth != sym {
        return Err(ChainError::TheoremViolation(format!(
            "branching matrix depth {matrix_depth} differs from 2n-1 = {sym}"
        )));
    }
    Ok(ChainConsistency {
        n,
        sym,
        alt,
        twisted_sym,
        matrix_depth,
        matrix_odd_depth,
    })
}

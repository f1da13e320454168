//! Character tables over a prime field.
//!
//! The class matrices of a group commute and, over `F_p` with `p ≡ 1 (mod e)`
//! for the exponent `e`, are simultaneously diagonalizable with one-dimensional
//! common eigenspaces. Each common eigenvector, scaled to 1 at the identity
//! class, lists the central character values `|C_j| χ(g_j) / χ(1)`; the degree
//! follows from the orthogonality relation and the character values from the
//! degree.

use thiserror::Error;

use crate::modp::{ceil_sqrt, floor_sqrt, is_prime, prime_factors, Fp};
use crate::permgrp::{conjugacy_classes, lcm, ConjugacyData, FiniteGroup};

pub const DEFAULT_PRIME_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("no admissible prime below {cap} (exponent {exponent}, order {order})")]
    PrimeSearchExhausted { cap: u64, exponent: u64, order: u64 },
    #[error("common eigenspaces failed to split: {0}")]
    SplitFailure(String),
    #[error("degree recovery failed: {0}")]
    DegreeRecoveryFailure(String),
    #[error("prime {p} is not admissible for a group of order {order} and exponent {exponent}")]
    InadmissiblePrime { p: u64, order: u64, exponent: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeContext {
    pub p: u64,
    pub exponent: u64,
    /// Primitive `exponent`-th root of unity mod `p`.
    pub omega: u64,
}

impl PrimeContext {
    pub fn field(&self) -> Fp {
        Fp::new(self.p)
    }

    /// The same prime viewed for a group whose exponent divides this one.
    pub fn restrict_to(&self, exponent: u64) -> Option<Self> {
        if exponent == 0 || self.exponent % exponent != 0 {
            return None;
        }
        let omega = self.field().pow(self.omega, self.exponent / exponent);
        Some(Self {
            p: self.p,
            exponent,
            omega,
        })
    }
}

/// Lcm of element orders.
pub fn exponent(g: &FiniteGroup) -> u64 {
    g.elements().iter().fold(1, |acc, x| lcm(acc, x.order()))
}

fn multiplicative_generator(f: Fp) -> u64 {
    let p = f.modulus();
    let factors = prime_factors(p - 1);
    (1..p)
        .find(|&g| factors.iter().all(|q| f.pow(g, (p - 1) / q) != 1))
        .expect("F_p* is cyclic")
}

/// `p > 2√order`, i.e. `p² > 4·order`: two degrees `d, d' ≤ √order` with
/// `d² ≡ d'²` then satisfy `d + d' < p`, so `d = d'`.
fn exceeds_degree_floor(p: u64, order: u64) -> bool {
    p * p > 4 * order
}

pub fn is_admissible(p: u64, order: u64, exponent: u64) -> bool {
    is_prime(p) && p % exponent == 1 % exponent && exceeds_degree_floor(p, order)
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2√order` and `p > above`.
pub fn choose_prime_above(
    order: u64,
    exponent: u64,
    above: u64,
    cap: u64,
) -> Result<PrimeContext, TableError> {
    // First candidate ≡ 1 mod exponent strictly above `above`.
    let mut p = above - above % exponent + 1;
    if p <= above {
        p += exponent;
    }
    while p <= cap {
        if is_prime(p) && exceeds_degree_floor(p, order) {
            let f = Fp::new(p);
            let omega = f.pow(multiplicative_generator(f), (p - 1) / exponent);
            return Ok(PrimeContext { p, exponent, omega });
        }
        p += exponent;
    }
    Err(TableError::PrimeSearchExhausted {
        cap,
        exponent,
        order,
    })
}

pub fn choose_prime(g: &FiniteGroup) -> Result<PrimeContext, TableError> {
    choose_prime_above(g.order() as u64, exponent(g), 0, DEFAULT_PRIME_CAP)
}

/// The next admissible prime after `ctx.p` for the same group.
pub fn next_prime(g: &FiniteGroup, ctx: &PrimeContext) -> Result<PrimeContext, TableError> {
    choose_prime_above(g.order() as u64, ctx.exponent, ctx.p, DEFAULT_PRIME_CAP)
}

/// `M_i[j][k] = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}`, the coefficient of the class
/// sum `C_k` in `C_i C_j`.
pub fn class_matrices(g: &FiniteGroup, classes: &ConjugacyData) -> Vec<Vec<Vec<u64>>> {
    let r = classes.num_classes();
    let inverses: Vec<_> = g.elements().iter().map(|x| x.inverse()).collect();
    let mut mats = vec![vec![vec![0u64; r]; r]; r];
    for (k, rep) in classes.class_reps.iter().enumerate() {
        for (i, members) in classes.class_members.iter().enumerate() {
            for &x in members {
                let y = inverses[x].compose(rep);
                let j = classes.class_of[g.index(&y).expect("closed under products")];
                mats[i][j][k] += 1;
            }
        }
    }
    mats
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharTableModP {
    pub context: PrimeContext,
    pub order: u64,
    /// `values[i][j]` is character `i` at class `j`, reduced mod `p`.
    pub values: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
    pub classes: ConjugacyData,
}

impl CharTableModP {
    pub fn num_irreducibles(&self) -> usize {
        self.values.len()
    }

    pub fn field(&self) -> Fp {
        self.context.field()
    }
}

fn mat_vec(f: Fp, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (a, b)| f.add(acc, f.mul(f.reduce(*a), *b)))
        })
        .collect()
}

/// Splits `F_p^r` into common eigenspaces of `mats`; returns one vector
/// per (necessarily one-dimensional) common eigenspace.
fn common_eigenvectors(f: Fp, mats: &[Vec<Vec<u64>>], r: usize) -> Result<Vec<Vec<u64>>, TableError> {
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![identity];
    for (mi, m) in mats.iter().enumerate() {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(r);
        for space in spaces {
            let k = space.len();
            if k == 1 {
                next.push(space);
                continue;
            }
            let images: Vec<Vec<u64>> = space.iter().map(|b| mat_vec(f, m, b)).collect();
            let mut found = 0;
            for lambda in 0..f.modulus() {
                let a: Vec<Vec<u64>> = (0..r)
                    .map(|row| {
                        (0..k)
                            .map(|l| f.sub(images[l][row], f.mul(lambda, space[l][row])))
                            .collect()
                    })
                    .collect();
                let kernel = f.nullspace(&a, k);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let sub = kernel
                    .iter()
                    .map(|coeffs| {
                        (0..r)
                            .map(|row| {
                                coeffs.iter().zip(&space).fold(0, |acc, (c, b)| {
                                    f.add(acc, f.mul(*c, b[row]))
                                })
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == k {
                    break;
                }
            }
            if found != k {
                return Err(TableError::SplitFailure(format!(
                    "class matrix {mi} is not diagonalizable on a {k}-dimensional subspace mod {}",
                    f.modulus()
                )));
            }
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() > 1) {
        return Err(TableError::SplitFailure(format!(
            "a common eigenspace of dimension {} remains",
            s.len()
        )));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

/// Computes the table with a freshly chosen prime.
pub fn dixon_table(g: &FiniteGroup) -> Result<CharTableModP, TableError> {
    let ctx = choose_prime(g)?;
    dixon_table_with(g, &conjugacy_classes(g), &ctx)
}

/// Computes the table mod `ctx.p`, which must be admissible for `g`.
pub fn dixon_table_with(
    g: &FiniteGroup,
    classes: &ConjugacyData,
    ctx: &PrimeContext,
) -> Result<CharTableModP, TableError> {
    let order = g.order() as u64;
    let e = exponent(g);
    if !is_admissible(ctx.p, order, e) {
        return Err(TableError::InadmissiblePrime {
            p: ctx.p,
            order,
            exponent: e,
        });
    }
    let ctx = ctx.restrict_to(e).unwrap_or_else(|| {
        let f = Fp::new(ctx.p);
        PrimeContext {
            p: ctx.p,
            exponent: e,
            omega: f.pow(multiplicative_generator(f), (ctx.p - 1) / e),
        }
    });
    let f = ctx.field();
    let r = classes.num_classes();
    let mats = class_matrices(g, classes);
    let vectors = common_eigenvectors(f, &mats, r)?;

    let inv_sizes: Vec<u64> = classes
        .class_sizes
        .iter()
        .map(|&s| f.inv(f.reduce(s as u64)))
        .collect();
    let max_degree = floor_sqrt(order);
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
    for v in vectors {
        if v[0] == 0 {
            return Err(TableError::SplitFailure(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let scale = f.inv(v[0]);
        let central: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();
        let norm = (0..r).fold(0, |acc, j| {
            let t = f.mul(central[j], central[classes.inverse_class[j]]);
            f.add(acc, f.mul(t, inv_sizes[j]))
        });
        if norm == 0 {
            return Err(TableError::DegreeRecoveryFailure(
                "central character has zero norm".into(),
            ));
        }
        let degree_sq = f.div(f.reduce(order), norm);
        let degree = (1..=max_degree)
            .find(|&d| f.mul(d, d) == degree_sq)
            .ok_or_else(|| {
                TableError::DegreeRecoveryFailure(format!(
                    "no square root of {degree_sq} mod {} in 1..={max_degree}",
                    f.modulus()
                ))
            })?;
        let values = (0..r)
            .map(|j| f.mul(f.mul(degree, central[j]), inv_sizes[j]))
            .collect();
        rows.push((degree, values));
    }
    rows.sort();
    let degree_sum: u64 = rows.iter().map(|(d, _)| d * d).sum();
    if degree_sum != order {
        return Err(TableError::DegreeRecoveryFailure(format!(
            "squared degrees sum to {degree_sum}, expected {order}"
        )));
    }
    let (degrees, values) = rows.into_iter().unzip();
    Ok(CharTableModP {
        context: ctx,
        order,
        values,
        degrees,
        classes: classes.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCheck {
    pub passed: bool,
    pub diagnostics: Vec<String>,
}

/// Checks the degree sum, both orthogonality relations mod `p`, the trivial
/// row and the degree/identity-column agreement.
pub fn verify_table(t: &CharTableModP) -> TableCheck {
    let mut diagnostics = Vec::new();
    let f = t.field();
    let r = t.classes.num_classes();
    let order = f.reduce(t.order);

    if t.values.len() != r || t.degrees.len() != r {
        diagnostics.push(format!(
            "{} rows and {} degrees for {r} classes",
            t.values.len(),
            t.degrees.len()
        ));
        return TableCheck {
            passed: false,
            diagnostics,
        };
    }
    if t.values.iter().any(|row| row.len() != r) {
        diagnostics.push("ragged value rows".into());
        return TableCheck {
            passed: false,
            diagnostics,
        };
    }
    let degree_sum: u64 = t.degrees.iter().map(|d| d * d).sum();
    if degree_sum != t.order {
        diagnostics.push(format!("squared degrees sum to {degree_sum}, not {}", t.order));
    }
    let bound = ceil_sqrt(t.order);
    for (i, &d) in t.degrees.iter().enumerate() {
        if d == 0 || d > bound {
            diagnostics.push(format!("degree {d} of row {i} out of range"));
        }
        if f.reduce(d) != t.values[i][0] {
            diagnostics.push(format!("row {i}: degree {d} disagrees with identity value"));
        }
    }
    if !t.values.iter().any(|row| row.iter().all(|&x| x == 1)) {
        diagnostics.push("no trivial character".into());
    }
    let inv = &t.classes.inverse_class;
    let sizes = &t.classes.class_sizes;
    for a in 0..r {
        for b in 0..r {
            let row = (0..r).fold(0, |acc, k| {
                let x = f.mul(t.values[a][k], t.values[b][inv[k]]);
                f.add(acc, f.mul(f.reduce(sizes[k] as u64), x))
            });
            let expected = if a == b { order } else { 0 };
            if row != expected {
                diagnostics.push(format!("row orthogonality fails for characters {a}, {b}"));
            }
            let col = (0..r).fold(0, |acc, i| {
                f.add(acc, f.mul(t.values[i][a], t.values[i][inv[b]]))
            });
            let expected = if a == b {
                f.div(order, f.reduce(sizes[a] as u64))
            } else {
                0
            };
            if col != expected {
                diagnostics.push(format!("column orthogonality fails for classes {a}, {b}"));
            }
        }
    }
    TableCheck {
        passed: diagnostics.is_empty(),
        diagnostics,
    }
}

//! Induction–restriction matrices of subgroup pairs and the depth pipeline.
//!
//! Both character tables of a pair are computed modulo the prime chosen for
//! the larger group. Each table is the image of the true table under some
//! ring homomorphism into `F_p`; the two homomorphisms may differ by a Galois
//! automorphism, which only permutes the irreducibles of the subgroup. The
//! resulting matrix is therefore the true inclusion matrix up to a row
//! permutation, and every depth quantity is permutation invariant.

use serde::Serialize;
use thiserror::Error;

use crate::cache::TableCache;
use crate::chartab::{
    choose_prime_above, dixon_table_with, exponent, CharTableModP, PrimeContext,
    DEFAULT_PRIME_CAP,
};
use crate::error::DepthError;
use crate::matdepth::{depth_report, irredundant, DepthReport, NonnegMatrix};
use crate::modp::ceil_sqrt;
use crate::permgrp::{
    conjugacy_classes, core, is_normal, is_subgroup, normalizer, quotient, ConjugacyData,
    FiniteGroup, GroupError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InclusionError {
    #[error("tables use different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("multiplicity {value} at ({row}, {col}) exceeds bound {bound}")]
    LiftOutOfRange {
        row: usize,
        col: usize,
        value: u64,
        bound: u64,
    },
    #[error("degree identity violated: {0}")]
    DegreeIdentityViolation(String),
    #[error("inclusion matrix is not irredundant")]
    Redundant,
    #[error("fusion has {got} classes, table has {expected}")]
    FusionMismatch { expected: usize, got: usize },
}

/// H-class index → G-class index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFusion {
    pub map: Vec<usize>,
}

pub fn class_fusion(
    g: &FiniteGroup,
    g_classes: &ConjugacyData,
    h: &FiniteGroup,
    h_classes: &ConjugacyData,
) -> Result<ClassFusion, GroupError> {
    if !is_subgroup(g, h)? {
        return Err(GroupError::NotASubgroup(
            "cannot fuse classes of a non-subgroup".into(),
        ));
    }
    let map = h_classes
        .class_reps
        .iter()
        .map(|rep| g_classes.class_of[g.index(rep).expect("subgroup element")])
        .collect();
    Ok(ClassFusion { map })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionMatrix {
    /// Rows: irreducibles of H. Columns: irreducibles of G.
    pub matrix: NonnegMatrix,
    pub h_degrees: Vec<u64>,
    pub g_degrees: Vec<u64>,
    pub index: u64,
}

/// Lifts residues to multiplicities and checks every structural identity.
fn validate_lift(
    residues: Vec<Vec<u64>>,
    tg: &CharTableModP,
    th: &CharTableModP,
) -> Result<InclusionMatrix, InclusionError> {
    let index = tg.order / th.order;
    let bound = ceil_sqrt(tg.order);
    for (i, row) in residues.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if m > bound || m * th.degrees[i] > tg.degrees[j] {
                return Err(InclusionError::LiftOutOfRange {
                    row: i,
                    col: j,
                    value: m,
                    bound: bound.min(tg.degrees[j] / th.degrees[i]),
                });
            }
        }
    }
    for (i, row) in residues.iter().enumerate() {
        let induced: u64 = row.iter().zip(&tg.degrees).map(|(m, d)| m * d).sum();
        if induced != index * th.degrees[i] {
            return Err(InclusionError::DegreeIdentityViolation(format!(
                "induced degree of row {i} is {induced}, expected {}",
                index * th.degrees[i]
            )));
        }
    }
    for (j, &gd) in tg.degrees.iter().enumerate() {
        let restricted: u64 = residues
            .iter()
            .zip(&th.degrees)
            .map(|(row, d)| row[j] * d)
            .sum();
        if restricted != gd {
            return Err(InclusionError::DegreeIdentityViolation(format!(
                "restricted degree of column {j} is {restricted}, expected {gd}"
            )));
        }
    }
    let matrix = NonnegMatrix::from_rows(&residues).map_err(|_| InclusionError::Redundant)?;
    if !irredundant(&matrix) {
        return Err(InclusionError::Redundant);
    }
    Ok(InclusionMatrix {
        matrix,
        h_degrees: th.degrees.clone(),
        g_degrees: tg.degrees.clone(),
        index,
    })
}

/// `M[i][j] = ⟨Res ψ_j, χ_i⟩_H` for `χ_i` irreducible in H and `ψ_j` in G.
pub fn inclusion_matrix(
    tg: &CharTableModP,
    th: &CharTableModP,
    fusion: &ClassFusion,
) -> Result<InclusionMatrix, InclusionError> {
    if tg.context.p != th.context.p {
        return Err(InclusionError::PrimeMismatch(tg.context.p, th.context.p));
    }
    let rh = th.classes.num_classes();
    if fusion.map.len() != rh {
        return Err(InclusionError::FusionMismatch {
            expected: rh,
            got: fusion.map.len(),
        });
    }
    let f = tg.field();
    let inv_order = f.inv(f.reduce(th.order));
    let sizes: Vec<u64> = th
        .classes
        .class_sizes
        .iter()
        .map(|&s| f.reduce(s as u64))
        .collect();
    let residues = (0..th.num_irreducibles())
        .map(|i| {
            (0..tg.num_irreducibles())
                .map(|j| {
                    let sum = (0..rh).fold(0, |acc, c| {
                        let x = f.mul(tg.values[j][fusion.map[c]], th.values[i][th.classes.inverse_class[c]]);
                        f.add(acc, f.mul(sizes[c], x))
                    });
                    f.mul(sum, inv_order)
                })
                .collect()
        })
        .collect();
    validate_lift(residues, tg, th)
}

/// Same matrix through Frobenius reciprocity: `⟨ψ_j, Ind χ_i⟩_G` with
/// `Ind χ(g) = |H|⁻¹ Σ_{x∈G} χ̇(x⁻¹ g x)`.
pub fn inclusion_matrix_via_induction(
    g: &FiniteGroup,
    tg: &CharTableModP,
    h: &FiniteGroup,
    th: &CharTableModP,
) -> Result<InclusionMatrix, InclusionError> {
    if tg.context.p != th.context.p {
        return Err(InclusionError::PrimeMismatch(tg.context.p, th.context.p));
    }
    let f = tg.field();
    let rg = tg.classes.num_classes();
    // For each G-class, the H-class of every conjugate lying in H.
    let conj_classes: Vec<Vec<usize>> = tg
        .classes
        .class_reps
        .iter()
        .map(|rep| {
            g.elements()
                .iter()
                .filter_map(|x| {
                    let y = x.inverse().compose(rep).compose(x);
                    h.index(&y).map(|k| th.classes.class_of[k])
                })
                .collect()
        })
        .collect();
    let inv_h = f.inv(f.reduce(th.order));
    let inv_g = f.inv(f.reduce(tg.order));
    let residues = (0..th.num_irreducibles())
        .map(|i| {
            let induced: Vec<u64> = conj_classes
                .iter()
                .map(|cs| {
                    let s = cs.iter().fold(0, |acc, &c| f.add(acc, th.values[i][c]));
                    f.mul(s, inv_h)
                })
                .collect();
            (0..tg.num_irreducibles())
                .map(|j| {
                    let s = (0..rg).fold(0, |acc, k| {
                        let x = f.mul(induced[k], tg.values[j][tg.classes.inverse_class[k]]);
                        f.add(acc, f.mul(f.reduce(tg.classes.class_sizes[k] as u64), x))
                    });
                    f.mul(s, inv_g)
                })
                .collect()
        })
        .collect();
    validate_lift(residues, tg, th)
}

/// Where character tables come from: computed fresh, or through a cache.
#[derive(Debug, Clone)]
pub struct TableSource {
    cache: Option<TableCache>,
    prime_cap: u64,
}

impl Default for TableSource {
    fn default() -> Self {
        Self::uncached()
    }
}

impl TableSource {
    pub fn uncached() -> Self {
        Self {
            cache: None,
            prime_cap: DEFAULT_PRIME_CAP,
        }
    }

    pub fn cached(cache: TableCache) -> Self {
        Self {
            cache: Some(cache),
            prime_cap: DEFAULT_PRIME_CAP,
        }
    }

    pub fn with_prime_cap(mut self, cap: u64) -> Self {
        self.prime_cap = cap;
        self
    }

    /// Smallest admissible prime for `g` within the configured search cap.
    pub fn prime_for(&self, g: &FiniteGroup) -> Result<PrimeContext, DepthError> {
        Ok(choose_prime_above(
            g.order() as u64,
            exponent(g),
            0,
            self.prime_cap,
        )?)
    }

    pub fn table(
        &self,
        g: &FiniteGroup,
        classes: &ConjugacyData,
        ctx: &PrimeContext,
    ) -> Result<CharTableModP, DepthError> {
        if let Some(cache) = &self.cache {
            if let Some(t) = cache.load(g, classes, ctx.p) {
                return Ok(t);
            }
        }
        let t = dixon_table_with(g, classes, ctx)?;
        if let Some(cache) = &self.cache {
            cache.store(g, &t)?;
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAnalysis {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: u64,
    pub core_order: usize,
    pub normalizer_index: u64,
    pub normal: bool,
    pub prime: u64,
    pub inclusion: InclusionMatrix,
    pub depth: DepthReport,
}

/// Full pipeline with the prime chosen for `g`.
pub fn pair_depth_report(
    g: &FiniteGroup,
    h: &FiniteGroup,
    tables: &TableSource,
) -> Result<PairAnalysis, DepthError> {
    let ctx = tables.prime_for(g)?;
    pair_depth_report_with_prime(g, h, &ctx, tables)
}

pub fn pair_depth_report_with_prime(
    g: &FiniteGroup,
    h: &FiniteGroup,
    ctx: &PrimeContext,
    tables: &TableSource,
) -> Result<PairAnalysis, DepthError> {
    if !is_subgroup(g, h)? {
        return Err(GroupError::NotASubgroup(format!(
            "subgroup of order {} is not contained in the group",
            h.order()
        ))
        .into());
    }
    let g_classes = conjugacy_classes(g);
    let h_classes = conjugacy_classes(h);
    let tg = tables.table(g, &g_classes, ctx)?;
    let th = tables.table(h, &h_classes, ctx)?;
    let fusion = class_fusion(g, &g_classes, h, &h_classes)?;
    let inclusion = inclusion_matrix(&tg, &th, &fusion)?;
    let depth = depth_report(&inclusion.matrix)?;

    let core_order = core(g, h)?.order();
    let normalizer_index = (g.order() / normalizer(g, h)?.order()) as u64;
    let normal = is_normal(g, h)?;

    if depth.min_depth > 2 * normalizer_index {
        return Err(DepthError::TheoremViolation(format!(
            "depth {} exceeds twice the normalizer index {normalizer_index}",
            depth.min_depth
        )));
    }
    let gap = depth.min_depth as i64 - depth.min_h_depth as i64;
    if !(-2..=1).contains(&gap) {
        return Err(DepthError::TheoremViolation(format!(
            "depth {} and h-depth {} differ by {gap}",
            depth.min_depth, depth.min_h_depth
        )));
    }
    Ok(PairAnalysis {
        group_order: g.order(),
        subgroup_order: h.order(),
        index: inclusion.index,
        core_order,
        normalizer_index,
        normal,
        prime: ctx.p,
        inclusion,
        depth,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreChecks {
    /// `d(H/N, G/N) ≤ d(H, G) ≤ d(H/N, G/N) + 1`
    pub sandwich: bool,
    /// Equality of depths when the quotient depth is even; `None` if odd.
    pub even_equality: Option<bool>,
    pub h_depth_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreReduction {
    pub core: FiniteGroup,
    pub original: PairAnalysis,
    /// The pair `(G/N, H/N)` computed from scratch on the coset action.
    pub quotient: PairAnalysis,
    pub checks: CoreChecks,
}

/// Reduces `H ≤ G` modulo `N = Core_G(H)` and checks the depth relations
/// between the two pairs; any failed relation is a [`DepthError::TheoremViolation`].
pub fn core_reduction_report(
    g: &FiniteGroup,
    h: &FiniteGroup,
    tables: &TableSource,
) -> Result<CoreReduction, DepthError> {
    let original = pair_depth_report(g, h, tables)?;
    let n = core(g, h)?;
    let q = quotient(g, &n)?;
    let hq = q.image_of(h)?;
    let quotient_pair = pair_depth_report(&q.quotient, &hq, tables)?;

    let d = original.depth.min_depth;
    let dq = quotient_pair.depth.min_depth;
    let checks = CoreChecks {
        sandwich: dq <= d && d <= dq + 1,
        even_equality: (dq % 2 == 0).then_some(d == dq),
        h_depth_equal: original.depth.min_h_depth == quotient_pair.depth.min_h_depth,
    };
    if !checks.sandwich {
        return Err(DepthError::TheoremViolation(format!(
            "quotient depth {dq} and depth {d} violate the core sandwich"
        )));
    }
    if checks.even_equality == Some(false) {
        return Err(DepthError::TheoremViolation(format!(
            "even quotient depth {dq} differs from depth {d}"
        )));
    }
    if !checks.h_depth_equal {
        return Err(DepthError::TheoremViolation(format!(
            "h-depth {} differs from quotient h-depth {}",
            original.depth.min_h_depth, quotient_pair.depth.min_h_depth
        )));
    }
    Ok(CoreReduction {
        core: n,
        original,
        quotient: quotient_pair,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::{choose_prime, next_prime};
    use crate::matdepth::min_depth;
    use crate::permgrp::{families, Permutation, DEFAULT_CAP};

    fn grp(degree: usize, gens: Vec<Permutation>) -> FiniteGroup {
        FiniteGroup::enumerate(degree, gens, DEFAULT_CAP).unwrap()
    }

    fn sym(n: usize, degree: usize) -> FiniteGroup {
        grp(degree, families::symmetric(n, degree).unwrap())
    }

    fn d8() -> FiniteGroup {
        let r = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let s = Permutation::from_cycles(4, &[vec![0, 2]]).unwrap();
        grp(4, vec![r, s])
    }

    fn a3() -> FiniteGroup {
        grp(3, families::alternating(3, 3).unwrap())
    }

    fn tables_for(g: &FiniteGroup, h: &FiniteGroup) -> (CharTableModP, CharTableModP, ClassFusion) {
        let ctx = choose_prime(g).unwrap();
        let (cg, ch) = (conjugacy_classes(g), conjugacy_classes(h));
        let tg = dixon_table_with(g, &cg, &ctx).unwrap();
        let th = dixon_table_with(h, &ch, &ctx).unwrap();
        let fusion = class_fusion(g, &cg, h, &ch).unwrap();
        (tg, th, fusion)
    }

    /// Sorted rows, then sorted columns, as a cheap canonical form for
    /// small 0/1-heavy matrices.
    fn sorted_rows(m: &NonnegMatrix) -> Vec<Vec<u64>> {
        let mut rows = m.to_u64_rows().unwrap();
        rows.sort();
        rows
    }

    #[test]
    fn fusion_examples() {
        let g = sym(3, 3);
        let cg = conjugacy_classes(&g);
        assert_eq!(class_fusion(&g, &cg, &g, &cg).unwrap().map, [0, 1, 2]);

        let h = a3();
        let ch = conjugacy_classes(&h);
        let fusion = class_fusion(&g, &cg, &h, &ch).unwrap();
        assert_eq!(fusion.map.len(), 3);
        assert_eq!(fusion.map[0], 0);
        assert_eq!(fusion.map[1], fusion.map[2]);

        let g = sym(4, 4);
        let cg = conjugacy_classes(&g);
        let h = d8();
        let ch = conjugacy_classes(&h);
        let fusion = class_fusion(&g, &cg, &h, &ch).unwrap();
        assert_eq!(fusion.map.len(), 5);
        for (c, &gc) in fusion.map.iter().enumerate() {
            assert_eq!(ch.class_reps[c].order(), cg.class_reps[gc].order());
        }
    }

    #[test]
    fn identity_pair_gives_identity_matrix() {
        let g = sym(4, 4);
        let (tg, th, fusion) = tables_for(&g, &g);
        let m = inclusion_matrix(&tg, &th, &fusion).unwrap();
        assert_eq!(m.matrix, NonnegMatrix::identity(5));
    }

    #[test]
    fn s3_a3_matrix() {
        let (tg, th, fusion) = tables_for(&sym(3, 3), &a3());
        let m = inclusion_matrix(&tg, &th, &fusion).unwrap();
        // Columns of S₃ are ordered trivial, sign, 2-dim; rows of A₃ trivial first.
        assert_eq!(
            sorted_rows(&m.matrix),
            vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(min_depth(&m.matrix).unwrap(), 2);
    }

    #[test]
    fn s4_d8_depth_four() {
        let (tg, th, fusion) = tables_for(&sym(4, 4), &d8());
        let m = inclusion_matrix(&tg, &th, &fusion).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (5, 5));
        assert_eq!(min_depth(&m.matrix).unwrap(), 4);
    }

    #[test]
    fn reciprocity_matches_restriction() {
        let g = sym(4, 4);
        for h in [d8(), sym(3, 4), grp(4, families::alternating(4, 4).unwrap())] {
            let (tg, th, fusion) = tables_for(&g, &h);
            let a = inclusion_matrix(&tg, &th, &fusion).unwrap();
            let b = inclusion_matrix_via_induction(&g, &tg, &h, &th).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn prime_mismatch_and_corruption_are_loud() {
        let g = sym(4, 4);
        let h = d8();
        let (tg, th, fusion) = tables_for(&g, &h);
        let ctx = next_prime(&g, &tg.context).unwrap();
        let th2 = dixon_table_with(&h, &th.classes, &ctx).unwrap();
        assert!(matches!(
            inclusion_matrix(&tg, &th2, &fusion),
            Err(InclusionError::PrimeMismatch(..))
        ));
        let mut bad = th.clone();
        bad.values[1][1] = (bad.values[1][1] + 3) % bad.context.p;
        assert!(inclusion_matrix(&tg, &bad, &fusion).is_err());
    }

    #[test]
    fn pair_reports() {
        let src = TableSource::uncached();
        let r = pair_depth_report(&sym(3, 3), &sym(2, 3), &src).unwrap();
        assert_eq!((r.depth.min_depth, r.depth.min_h_depth), (3, 5));
        let r = pair_depth_report(&sym(4, 4), &d8(), &src).unwrap();
        assert_eq!(r.depth.min_depth, 4);
        assert_eq!(r.core_order, 4);
        assert_eq!(r.normalizer_index, 3);
        let a4 = grp(4, families::alternating(4, 4).unwrap());
        let r = pair_depth_report(&sym(4, 4), &a4, &src).unwrap();
        assert_eq!(r.depth.min_depth, 2);
        assert!(r.normal);
        assert!(matches!(
            pair_depth_report(&d8(), &sym(3, 4), &src),
            Err(DepthError::Group(GroupError::NotASubgroup(_)))
        ));
    }

    #[test]
    fn core_reduction_examples() {
        let src = TableSource::uncached();
        let r = core_reduction_report(&sym(4, 4), &d8(), &src).unwrap();
        assert_eq!(r.core.order(), 4);
        assert_eq!((r.quotient.group_order, r.quotient.subgroup_order), (6, 2));
        assert_eq!((r.quotient.depth.min_depth, r.original.depth.min_depth), (3, 4));
        assert_eq!(r.quotient.depth.min_h_depth, r.original.depth.min_h_depth);
        assert_eq!(r.checks.even_equality, None);

        let a4 = grp(4, families::alternating(4, 4).unwrap());
        let r = core_reduction_report(&sym(4, 4), &a4, &src).unwrap();
        assert_eq!(r.quotient.subgroup_order, 1);
        assert!(r.original.depth.min_depth <= 2);

        let r = core_reduction_report(&sym(5, 5), &sym(4, 5), &src).unwrap();
        assert_eq!(r.core.order(), 1);
        let key = |d: &DepthReport| (d.min_depth, d.min_odd_depth, d.min_h_depth);
        assert_eq!(key(&r.quotient.depth), key(&r.original.depth));
    }
}

//! Explicit permutation groups.
//!
//! Groups are fully enumerated; every element is stored and indexed. The
//! element list is kept sorted, so two groups with the same element set are
//! identical regardless of how they were generated, and the identity is
//! always element 0.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not closed under multiplication")]
    NotClosed,
}

/// A bijection of `{0, …, n-1}` stored by images.
///
/// Products compose right to left: `(a * b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(GroupError::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 0-indexed cycles. Cycles must be disjoint.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {a} out of range for degree {degree}"
                    )));
                }
                if moved[a] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {a} appears twice in cycle notation"
                    )));
                }
                moved[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Self { images }
    }

    /// `self * x * self⁻¹`
    pub fn conjugate(&self, x: &Self) -> Self {
        self.compose(x).compose(&self.inverse())
    }

    /// Same permutation acting on `degree ≥ self.degree()` points, fixing the new ones.
    pub fn extend(&self, degree: usize) -> Result<Self, GroupError> {
        if degree < self.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), degree));
        }
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Ok(Self { images })
    }

    /// Disjoint cycles of length ≥ 2, 0-indexed, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

/// 1-indexed cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index_of: HashMap<Permutation, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

/// Breadth-first closure of `generators` (together with the identity).
fn closure(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, GroupError> {
    let id = Permutation::identity(degree);
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(id.clone(), ());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    Ok(out)
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators` on `degree` points.
    pub fn enumerate(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        if cap == 0 {
            return Err(GroupError::CapExceeded { cap });
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let elements = closure(degree, &generators, cap)?;
        Ok(Self::from_sorted(degree, generators, elements))
    }

    fn from_sorted(degree: usize, generators: Vec<Permutation>, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let index_of = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Self {
            degree,
            generators,
            elements,
            index_of,
        }
    }

    /// Builds a group from an element set that is claimed to be a group; a
    /// small generating set is chosen greedily and its closure must reproduce
    /// the set exactly.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self, GroupError> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashMap<Permutation, ()> = HashMap::new();
        span.insert(Permutation::identity(degree), ());
        for x in &elements {
            if x.degree() != degree {
                return Err(GroupError::DegreeMismatch(x.degree(), degree));
            }
            if span.contains_key(x) {
                continue;
            }
            generators.push(x.clone());
            let next = closure(degree, &generators, elements.len())
                .map_err(|_| GroupError::NotClosed)?;
            span = next.into_iter().map(|p| (p, ())).collect();
        }
        if span.len() != elements.len() || elements.iter().any(|x| !span.contains_key(x)) {
            return Err(GroupError::NotClosed);
        }
        Ok(Self::from_sorted(degree, generators, elements))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index(&self, x: &Permutation) -> Option<usize> {
        self.index_of.get(x).copied()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index_of.contains_key(x)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].compose(&self.elements[j]);
        self.index_of[&p]
    }

    /// Lists the element set as 1-indexed cycle strings.
    pub fn describe_generators(&self) -> String {
        if self.generators.is_empty() {
            return "()".to_string();
        }
        self.generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyData {
    pub class_reps: Vec<Permutation>,
    pub class_sizes: Vec<usize>,
    /// Element index → class index.
    pub class_of: Vec<usize>,
    /// Class of `x⁻¹` for `x` in class `i`.
    pub inverse_class: Vec<usize>,
    /// Element indices of each class, ascending.
    pub class_members: Vec<Vec<usize>>,
}

impl ConjugacyData {
    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }
}

/// Conjugacy classes ordered by their least element, so class 0 is the
/// identity class and the order depends only on the element set.
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyData {
    const UNSET: usize = usize::MAX;
    let n = g.order();
    let gens_inv: Vec<(Permutation, Permutation)> = g
        .generators
        .iter()
        .map(|s| (s.clone(), s.inverse()))
        .collect();
    let mut class_of = vec![UNSET; n];
    let mut class_reps = Vec::new();
    let mut class_members = Vec::new();
    for start in 0..n {
        if class_of[start] != UNSET {
            continue;
        }
        let c = class_reps.len();
        class_reps.push(g.elements[start].clone());
        class_of[start] = c;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let x = &g.elements[i];
            for (s, s_inv) in &gens_inv {
                let y = s.compose(x).compose(s_inv);
                let j = g.index_of[&y];
                if class_of[j] == UNSET {
                    class_of[j] = c;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        class_members.push(members);
    }
    let class_sizes = class_members.iter().map(Vec::len).collect();
    let inverse_class = class_reps
        .iter()
        .map(|x| class_of[g.index_of[&x.inverse()]])
        .collect();
    ConjugacyData {
        class_reps,
        class_sizes,
        class_of,
        inverse_class,
        class_members,
    }
}

fn check_degree(g: &FiniteGroup, h: &FiniteGroup) -> Result<(), GroupError> {
    if g.degree != h.degree {
        return Err(GroupError::DegreeMismatch(g.degree, h.degree));
    }
    Ok(())
}

pub fn is_subgroup(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool, GroupError> {
    check_degree(g, h)?;
    Ok(g.order() % h.order() == 0 && h.elements.iter().all(|x| g.contains(x)))
}

fn require_subgroup(g: &FiniteGroup, h: &FiniteGroup) -> Result<(), GroupError> {
    if !is_subgroup(g, h)? {
        return Err(GroupError::NotASubgroup(format!(
            "group of order {} is not contained in group of order {}",
            h.order(),
            g.order()
        )));
    }
    Ok(())
}

/// `s H s⁻¹ ⊆ H` for every generator `s` of `G` suffices since both sides
/// have the same order.
fn normalized_by(h: &FiniteGroup, s: &Permutation) -> bool {
    let s_inv = s.inverse();
    h.generators
        .iter()
        .all(|x| h.contains(&s.compose(x).compose(&s_inv)))
}

pub fn is_normal(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool, GroupError> {
    require_subgroup(g, h)?;
    Ok(g.generators.iter().all(|s| normalized_by(h, s)))
}

/// Partition of `G` into left cosets `xH`.
#[derive(Debug, Clone)]
pub struct LeftCosets {
    /// Element index of `G` → coset index.
    pub coset_of: Vec<usize>,
    /// Least element index of each coset.
    pub reps: Vec<usize>,
}

pub fn left_cosets(g: &FiniteGroup, h: &FiniteGroup) -> Result<LeftCosets, GroupError> {
    require_subgroup(g, h)?;
    const UNSET: usize = usize::MAX;
    let mut coset_of = vec![UNSET; g.order()];
    let mut reps = Vec::with_capacity(g.order() / h.order());
    for i in 0..g.order() {
        if coset_of[i] != UNSET {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        let x = &g.elements[i];
        for y in &h.elements {
            coset_of[g.index_of[&x.compose(y)]] = c;
        }
    }
    Ok(LeftCosets { coset_of, reps })
}

/// Largest normal subgroup of `G` inside `H`, computed as the kernel of the
/// action of `G` on the left cosets of `H`.
pub fn core(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let cosets = left_cosets(g, h)?;
    // The kernel lies inside H, so only H needs testing.
    let kernel: Vec<Permutation> = h
        .elements
        .iter()
        .filter(|x| {
            cosets.reps.iter().enumerate().all(|(c, &r)| {
                let y = x.compose(&g.elements[r]);
                cosets.coset_of[g.index_of[&y]] == c
            })
        })
        .cloned()
        .collect();
    FiniteGroup::from_elements(g.degree, kernel)
}

pub fn normalizer(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    require_subgroup(g, h)?;
    let elements: Vec<Permutation> = g
        .elements
        .iter()
        .filter(|s| normalized_by(h, s))
        .cloned()
        .collect();
    FiniteGroup::from_elements(g.degree, elements)
}

/// `G/N` acting faithfully on the left cosets of `N`.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    pub quotient: FiniteGroup,
    /// Element index of the parent → element index of the quotient.
    pub projection: Vec<usize>,
    parent: FiniteGroup,
    kernel_order: usize,
}

impl QuotientPresentation {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel_order
    }

    pub fn project(&self, x: &Permutation) -> Option<&Permutation> {
        self.parent
            .index(x)
            .map(|i| self.quotient.element(self.projection[i]))
    }

    /// Image `HN/N` of a subgroup `H` with `N ≤ H ≤ G`.
    pub fn image_of(&self, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        require_subgroup(&self.parent, h)?;
        if h.order() % self.kernel_order != 0 {
            return Err(GroupError::NotASubgroup(
                "subgroup does not contain the kernel".into(),
            ));
        }
        let mut image: Vec<usize> = h
            .elements
            .iter()
            .map(|x| self.projection[self.parent.index_of[x]])
            .collect();
        image.sort_unstable();
        image.dedup();
        if image.len() * self.kernel_order != h.order() {
            return Err(GroupError::NotASubgroup(
                "subgroup does not contain the kernel".into(),
            ));
        }
        let gens = h
            .generators
            .iter()
            .map(|x| self.quotient.element(self.projection[self.parent.index_of[x]]).clone())
            .collect();
        let elements = image
            .into_iter()
            .map(|i| self.quotient.element(i).clone())
            .collect();
        Ok(FiniteGroup::from_sorted(self.quotient.degree, gens, elements))
    }
}

pub fn quotient(g: &FiniteGroup, n: &FiniteGroup) -> Result<QuotientPresentation, GroupError> {
    if !is_normal(g, n)? {
        return Err(GroupError::NotNormal);
    }
    let cosets = left_cosets(g, n)?;
    let k = cosets.reps.len();
    // For N normal the action of x depends only on the coset xN.
    let action: Vec<Permutation> = cosets
        .reps
        .iter()
        .map(|&r| {
            let x = &g.elements[r];
            let images = cosets
                .reps
                .iter()
                .map(|&s| cosets.coset_of[g.index_of[&x.compose(&g.elements[s])]] as u32)
                .collect();
            Permutation { images }
        })
        .collect();
    let gens: Vec<Permutation> = g
        .generators
        .iter()
        .map(|s| action[cosets.coset_of[g.index_of[s]]].clone())
        .collect();
    let quotient = FiniteGroup::from_sorted(k, gens, action.clone());
    if quotient.order() != k {
        return Err(GroupError::NotNormal);
    }
    let projection = cosets
        .coset_of
        .iter()
        .map(|&c| quotient.index_of[&action[c]])
        .collect();
    Ok(QuotientPresentation {
        quotient,
        projection,
        parent: g.clone(),
        kernel_order: n.order(),
    })
}

/// Standard generating sets, 0-indexed, on `degree` points (`degree ≥ n`).
pub mod families {
    use super::{GroupError, Permutation};

    fn cycle(degree: usize, pts: impl IntoIterator<Item = usize>) -> Result<Permutation, GroupError> {
        Permutation::from_cycles(degree, &[pts.into_iter().collect()])
    }

    /// `{(1 2), (1 2 … n)}`.
    pub fn symmetric(n: usize, degree: usize) -> Result<Vec<Permutation>, GroupError> {
        if n < 2 {
            return Ok(Vec::new());
        }
        Ok(vec![cycle(degree, [0, 1])?, cycle(degree, 0..n)?])
    }

    /// `{(1 2 k) : 3 ≤ k ≤ n}`.
    pub fn alternating(n: usize, degree: usize) -> Result<Vec<Permutation>, GroupError> {
        (2..n).map(|k| cycle(degree, [0, 1, k])).collect()
    }

    /// `{(1 2 … n)}`.
    pub fn cyclic(n: usize, degree: usize) -> Result<Vec<Permutation>, GroupError> {
        if n < 2 {
            return Ok(Vec::new());
        }
        Ok(vec![cycle(degree, 0..n)?])
    }

    /// Dihedral group of order `2n` on `n ≥ 3` points: rotation and the
    /// reflection fixing point 1.
    pub fn dihedral(n: usize, degree: usize) -> Result<Vec<Permutation>, GroupError> {
        if n < 3 {
            return Err(GroupError::InvalidPermutation(format!(
                "dihedral group needs at least 3 points, got {n}"
            )));
        }
        let reflection: Vec<Vec<usize>> = (1..n)
            .map(|i| (i, n - i))
            .filter(|(a, b)| a < b)
            .map(|(a, b)| vec![a, b])
            .collect();
        Ok(vec![
            cycle(degree, 0..n)?,
            Permutation::from_cycles(degree, &reflection)?,
        ])
    }
}

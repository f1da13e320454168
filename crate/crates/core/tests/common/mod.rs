#![allow(dead_code)]

use depthlab::groupspec::parse_group_spec;
use depthlab::permgrp::{FiniteGroup, Permutation, DEFAULT_CAP};

pub fn group(spec: &str) -> FiniteGroup {
    let s = parse_group_spec(spec).unwrap();
    FiniteGroup::enumerate(s.degree, s.generators, DEFAULT_CAP).unwrap()
}

/// Subgroup given by `spec`, embedded in the degree of `g`.
pub fn subgroup(g: &FiniteGroup, spec: &str) -> FiniteGroup {
    let s = parse_group_spec(spec).unwrap().with_degree(g.degree()).unwrap();
    FiniteGroup::enumerate(s.degree, s.generators, DEFAULT_CAP).unwrap()
}

/// Quaternion group acting regularly on itself by left multiplication.
pub fn quaternion() -> FiniteGroup {
    // Element (s, u): sign s ∈ {0, 1}, unit u ∈ {1, i, j, k} as 0..4; index 4s + u.
    const UNIT_MUL: [[(u8, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mul = |a: usize, b: usize| {
        let (sa, ua) = (a / 4, a % 4);
        let (sb, ub) = (b / 4, b % 4);
        let (s, u) = UNIT_MUL[ua][ub];
        ((sa + sb + s as usize) % 2) * 4 + u
    };
    let left = |a: usize| Permutation::from_images((0..8).map(|b| mul(a, b) as u32).collect()).unwrap();
    FiniteGroup::enumerate(8, vec![left(1), left(2)], DEFAULT_CAP).unwrap()
}

pub struct CatalogPair {
    pub name: String,
    pub g: FiniteGroup,
    pub h: FiniteGroup,
}

fn pairs_of(g_spec: &str, subs: &[&str]) -> Vec<CatalogPair> {
    let g = group(g_spec);
    subs.iter()
        .map(|s| CatalogPair {
            name: format!("{g_spec} > {s}"),
            h: subgroup(&g, s),
            g: g.clone(),
        })
        .collect()
}

/// Desk-scale pairs covering normal and non-normal subgroups, trivial and
/// nontrivial cores.
pub fn catalog() -> Vec<CatalogPair> {
    let mut out = Vec::new();
    out.extend(pairs_of("sym:3", &["sym:2", "alt:3", "gens:()", "sym:3"]));
    out.extend(pairs_of(
        "sym:4",
        &[
            "gens:(1 2 3 4),(1 3)",
            "gens:(1 2)(3 4),(1 3)(2 4)",
            "alt:4",
            "sym:3",
            "gens:(1 2 3 4)",
            "gens:(1 2)",
            "gens:(1 2)(3 4)",
            "gens:()",
        ],
    ));
    out.extend(pairs_of(
        "alt:4",
        &["gens:(1 2)(3 4),(1 3)(2 4)", "gens:(1 2 3)", "gens:(1 2)(3 4)"],
    ));
    out.extend(pairs_of(
        "gens:(1 2 3 4),(1 3)",
        &["gens:(1 3)(2 4)", "gens:(1 3)", "gens:(1 3),(2 4)", "gens:(1 2 3 4)"],
    ));
    out.extend(pairs_of(
        "gens:(1 2 3 4),(1 3),(5 6)",
        &[
            "gens:(1 3),(5 6)",
            "gens:(1 3),(2 4)(5 6)",
            "gens:(1 2)(3 4),(5 6)",
            "gens:(1 3)(5 6)",
        ],
    ));
    out.extend(pairs_of("gens:(1 2),(1 2 3),(4 5)", &["gens:(1 2),(4 5)", "gens:(1 2)(4 5)"]));
    out.extend(pairs_of(
        "gens:(1 2),(1 2 3 4),(5 6)",
        &[
            "gens:(1 2 3 4),(1 3),(5 6)",
            "gens:(1 2),(1 2 3),(5 6)",
            "gens:(1 2),(5 6)",
        ],
    ));
    out.extend(pairs_of("sym:5", &["sym:4", "alt:5", "dih:5"]));
    out.extend(pairs_of("alt:5", &["alt:4"]));
    out.extend(pairs_of("cyc:6", &["gens:(1 3 5)(2 4 6)"]));

    let q8 = quaternion();
    let i_sub = FiniteGroup::enumerate(8, vec![q8.generators()[0].clone()], DEFAULT_CAP).unwrap();
    let minus_one = i_sub
        .elements()
        .iter()
        .find(|x| x.order() == 2)
        .unwrap()
        .clone();
    let center = FiniteGroup::enumerate(8, vec![minus_one], DEFAULT_CAP).unwrap();
    out.push(CatalogPair {
        name: "Q8 > <i>".into(),
        g: q8.clone(),
        h: i_sub,
    });
    out.push(CatalogPair {
        name: "Q8 > <-1>".into(),
        g: q8,
        h: center,
    });
    out
}

/// Every distinct group appearing in the catalog, plus a few extra families.
pub fn catalog_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for spec in ["cyc:1@2", "cyc:5", "cyc:6", "dih:4", "sym:3", "sym:4", "sym:5", "sym:6", "alt:4", "alt:5", "alt:6"] {
        out.push((spec.to_string(), group(spec)));
    }
    out.push(("Q8".into(), quaternion()));
    for pair in catalog() {
        for (name, g) in [(format!("G of {}", pair.name), pair.g), (format!("H of {}", pair.name), pair.h)] {
            if !out.iter().any(|(_, x)| *x == g) {
                out.push((name, g));
            }
        }
    }
    out
}

pub mod oracle;

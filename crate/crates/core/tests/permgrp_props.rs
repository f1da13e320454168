mod common;

use depthlab::permgrp::{core, is_normal, is_subgroup, left_cosets, quotient, FiniteGroup, DEFAULT_CAP};

use common::{catalog, group};

#[test]
fn lagrange_and_cosets() {
    for pair in catalog() {
        assert!(is_subgroup(&pair.g, &pair.h).unwrap(), "{}", pair.name);
        assert_eq!(pair.g.order() % pair.h.order(), 0, "{}", pair.name);
        let cosets = left_cosets(&pair.g, &pair.h).unwrap();
        assert_eq!(cosets.reps.len() * pair.h.order(), pair.g.order(), "{}", pair.name);
    }
}

#[test]
fn core_is_largest_normal_subgroup_inside_h() {
    for pair in catalog().into_iter().filter(|p| p.g.order() <= 24) {
        let n = core(&pair.g, &pair.h).unwrap();
        assert!(is_normal(&pair.g, &n).unwrap(), "{}", pair.name);
        assert!(is_subgroup(&pair.h, &n).unwrap(), "{}", pair.name);
        // Any normal subgroup of G generated by a single H-element's
        // conjugacy closure lies in the core exactly when it lies in H.
        for x in pair.h.elements() {
            let conj: Vec<_> = pair.g.elements().iter().map(|g| g.conjugate(x)).collect();
            let closure = FiniteGroup::enumerate(pair.g.degree(), conj, DEFAULT_CAP).unwrap();
            let inside = closure.elements().iter().all(|y| pair.h.contains(y));
            assert_eq!(inside, n.contains(x), "{}: element {}", pair.name, x);
        }
    }
}

#[test]
fn projection_is_a_homomorphism_and_quotient_by_core_is_corefree() {
    for pair in catalog().into_iter().filter(|p| p.g.order() <= 48) {
        let n = core(&pair.g, &pair.h).unwrap();
        let q = quotient(&pair.g, &n).unwrap();
        assert_eq!(q.quotient.order() * n.order(), pair.g.order(), "{}", pair.name);
        for i in 0..pair.g.order() {
            for j in 0..pair.g.order() {
                let ij = pair.g.mul_index(i, j);
                assert_eq!(
                    q.projection[ij],
                    q.quotient.mul_index(q.projection[i], q.projection[j]),
                    "{}",
                    pair.name
                );
            }
        }
        let hq = q.image_of(&pair.h).unwrap();
        assert_eq!(hq.order() * n.order(), pair.h.order(), "{}", pair.name);
        assert_eq!(core(&q.quotient, &hq).unwrap().order(), 1, "{}", pair.name);
    }
}

#[test]
fn generator_order_does_not_matter() {
    let a = group("gens:(1 2 3 4),(1 3)");
    let b = group("gens:(1 3),(1 2 3 4)");
    assert_eq!(a.elements(), b.elements());
    let c = group("gens:(1 2),(1 2 3 4 5)");
    assert_eq!(c.elements(), group("sym:5").elements());
}

#[test]
fn cap_is_enforced() {
    let s = depthlab::groupspec::parse_group_spec("sym:7").unwrap();
    assert!(FiniteGroup::enumerate(s.degree, s.generators, 1000).is_err());
}

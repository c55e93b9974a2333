use std::sync::Arc;

use medial_ldc::palgebra::{chain_lattice, two_element_lattice};
use medial_ldc::pcoh::*;
use medial_ldc::rel::Rel;

fn brute_homs(a: &PCohObject, b: &PCohObject) -> Vec<Rel> {
    let (n, m) = (a.size(), b.size());
    (0u32..1 << (n * m))
        .map(|mask| Rel::from_fn(n, m, |i, j| mask >> (i * m + j) & 1 == 1))
        .filter(|r| {
            PCohMorphism::new(a.clone(), b.clone(), r.clone())
                .map(|f| validate_morphism(&f).is_empty())
                .unwrap_or(false)
        })
        .collect()
}

#[test]
fn hom_set_matches_brute_force_over_two() {
    let p = Arc::new(two_element_lattice());
    let objs = probe_objects(&p, 2);
    for a in &objs {
        for b in &objs {
            let fast: Vec<Rel> = hom_set(a, b).unwrap().into_iter().map(|f| f.rel).collect();
            assert_eq!(fast, brute_homs(a, b), "{:?} -> {:?}", a.to_json(), b.to_json());
        }
    }
}

#[test]
fn hom_set_matches_brute_force_over_chain() {
    let p = Arc::new(chain_lattice(3));
    let objs = probe_representatives(&p, 2);
    for a in &objs {
        for b in &objs {
            let fast: Vec<Rel> = hom_set(a, b).unwrap().into_iter().map(|f| f.rel).collect();
            assert_eq!(fast, brute_homs(a, b));
        }
    }
}

#[test]
fn hom_set_guards_large_tables() {
    let p = Arc::new(two_element_lattice());
    let big = probe_objects(&p, 3).into_iter().find(|o| o.size() == 3).unwrap();
    let sq = tensor_obj(&big, &big).unwrap();
    assert!(hom_set(&sq, &big).is_err());
}

#[test]
fn representatives_cover_every_class_once() {
    let p = Arc::new(two_element_lattice());
    let all = probe_objects(&p, 2);
    let reps = probe_representatives(&p, 2);
    assert!(reps.len() < all.len());
    let iso = |x: &PCohObject, y: &PCohObject| {
        x.size() == y.size()
            && hom_set(x, y).unwrap().iter().any(|f| {
                f.rel.count() > 0
                    && hom_set(y, x).unwrap().iter().any(|g| {
                        compose(f, g).unwrap().rel == identity(x).rel
                            && compose(g, f).unwrap().rel == identity(y).rel
                    })
            })
    };
    for o in &all {
        assert_eq!(reps.iter().filter(|r| iso(r, o)).count(), 1, "{:?}", o.to_json());
    }
}

use std::collections::HashMap;

use medial_ldc::formula::parse;
use medial_ldc::palgebra::*;
use medial_ldc::poset::*;
use proptest::prelude::*;

fn axioms(p: &PosetalSMLDC) -> Vec<String> {
    validate_posetal_smldc(p).unwrap().into_iter().map(|v| v.axiom).collect()
}

#[test]
fn small_posets_validate() {
    assert!(validate_poset(&FinPoset::singleton()).is_empty());
    assert!(validate_poset(&FinPoset::chain(2)).is_empty());
}

#[test]
fn antisymmetry_violation_is_located() {
    let p = FinPoset::new(2, vec![vec![true, true], vec![true, true]]).unwrap();
    let v = validate_poset(&p);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].axiom, "antisymmetric");
    assert_eq!(v[0].witness, vec![0, 1]);
}

#[test]
fn ragged_table_is_rejected() {
    assert!(FinPoset::new(2, vec![vec![true], vec![true, true]]).is_err());
}

#[test]
fn product_counts() {
    let one = FinPoset::singleton();
    assert_eq!(product(&one, &one), one);
    let c = FinPoset::chain(2);
    let sq = product(&c, &c);
    assert_eq!(sq.size(), 4);
    assert_eq!(sq.related_pairs(), 9);
    assert!(sq.le(0, 1) && sq.le(2, 3) && sq.le(0, 3) && !sq.le(1, 2));
    let d = product(&FinPoset::discrete(2), &c);
    assert_eq!(d.size(), 4);
    assert_eq!(d.related_pairs(), 6);
}

#[test]
fn leq_examples() {
    let c = FinPoset::chain(2);
    assert!(c.leq(0, 1).unwrap());
    assert!(!c.leq(1, 0).unwrap());
    assert!(c.leq(2, 0).is_err());
}

#[test]
fn labelled_poset_counts() {
    let counts: Vec<usize> = (0..=4).map(|n| all_posets(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 19, 219]);
}

#[test]
fn standard_lattices_validate() {
    for p in [two_element_lattice(), chain_lattice(3), boolean_square(), trivial_algebra()] {
        assert!(axioms(&p).is_empty(), "{p:?}");
    }
    assert_eq!(two_element_lattice().size(), 2);
}

#[test]
fn lattice_constructors_agree() {
    let c2 = FinPoset::chain(2);
    assert_eq!(lattice_from_order(c2).unwrap(), two_element_lattice());
    assert_eq!(lattice_from_order(FinPoset::chain(3)).unwrap(), chain_lattice(3));
    let meet = vec![vec![0, 0], vec![0, 1]];
    let join = vec![vec![0, 1], vec![1, 1]];
    assert_eq!(
        from_bounded_distributive_lattice(meet, join, FinPoset::chain(2)).unwrap(),
        two_element_lattice()
    );
}

#[test]
fn non_lattices_are_rejected() {
    assert!(lattice_from_order(FinPoset::discrete(2)).is_err());
    // the diamond M3 is a lattice but not distributive
    let m3 = FinPoset::from_fn(5, |x, y| x == y || x == 0 || y == 4);
    assert!(matches!(lattice_from_order(m3), Err(medial_ldc::Error::NotDistributive { .. })));
    let wrong_meet = vec![vec![1, 0], vec![0, 1]];
    let join = vec![vec![0, 1], vec![1, 1]];
    assert!(from_bounded_distributive_lattice(wrong_meet, join, FinPoset::chain(2)).is_err());
}

#[test]
fn medial_is_strict_somewhere_over_two() {
    let p = two_element_lattice();
    let (a, b, c, d) = (1, 0, 0, 1);
    assert_eq!(p.p(p.t(a, b), p.t(c, d)), 0);
    assert_eq!(p.t(p.p(a, c), p.p(b, d)), 1);
}

/// Broken variants of known-good algebras, each with the axiom it must trip.
fn mutation_fixtures() -> Vec<(&'static str, PosetalSMLDC, &'static str)> {
    let two = two_element_lattice();
    let mut bot_one = two.clone();
    bot_one.bot = 1;
    let mut swapped = two.clone();
    std::mem::swap(&mut swapped.tensor, &mut swapped.par);
    let mut dual = swapped.clone();
    dual.top = 0;
    dual.bot = 1;
    let mut lopsided = chain_lattice(3);
    lopsided.tensor[1][2] = 2;
    let mut bad_order = two.clone();
    bad_order.carrier = FinPoset::new(2, vec![vec![true, true], vec![true, true]]).unwrap();
    vec![
        ("bottom is 1", bot_one, "par-unit"),
        ("tables swapped", swapped, "tensor-unit"),
        ("order dual", dual, "nullary-mix"),
        ("lopsided tensor", lopsided, "tensor-commutative"),
        ("collapsed order", bad_order, "poset-antisymmetric"),
    ]
}

#[test]
fn mutation_fixtures_name_their_axiom() {
    for (name, p, axiom) in mutation_fixtures() {
        let v = validate_posetal_smldc(&p).unwrap();
        let hit = v.iter().find(|x| x.axiom == axiom);
        assert!(hit.is_some_and(|h| !h.witness.is_empty()), "{name}: {v:?}");
    }
}

#[test]
fn bottom_one_fails_par_unit_at_zero() {
    let mut p = two_element_lattice();
    p.bot = 1;
    let v = validate_posetal_smldc(&p).unwrap();
    let unit: Vec<_> = v.iter().filter(|x| x.axiom == "par-unit").collect();
    assert_eq!(unit[0].witness, vec![0]);
}

#[test]
fn bad_dimensions_are_input_errors() {
    let mut p = two_element_lattice();
    p.tensor.pop();
    assert!(validate_posetal_smldc(&p).is_err());
    let mut q = two_element_lattice();
    q.top = 7;
    assert!(validate_posetal_smldc(&q).is_err());
}

#[test]
fn eval_formula_examples() {
    let p = two_element_lattice();
    let sigma: HashMap<String, usize> = [("a", 1), ("b", 0), ("c", 0), ("d", 1)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    assert_eq!(eval_formula(&p, &sigma, &parse("a*b").unwrap()).unwrap(), 0);
    assert_eq!(eval_formula(&p, &sigma, &parse("1").unwrap()).unwrap(), 1);
    assert_eq!(eval_formula(&p, &sigma, &parse("(a*b)+(c*d)").unwrap()).unwrap(), 0);
    assert!(eval_formula(&p, &HashMap::new(), &parse("a").unwrap()).is_err());
}

#[test]
fn algebra_json_round_trip() {
    let p = boolean_square();
    let text = serde_json::to_string(&p).unwrap();
    assert!(text.contains("\"poset\""));
    let back: PosetalSMLDC = serde_json::from_str(&text).unwrap();
    assert_eq!(back, p);
}

/// Every order on up to four points that happens to be a distributive lattice yields a valid algebra.
#[test]
fn every_small_distributive_lattice_validates() {
    let mut found = 0;
    for n in 1..=4 {
        for o in all_posets(n) {
            if let Ok(p) = lattice_from_order(o) {
                assert!(axioms(&p).is_empty());
                found += 1;
            }
        }
    }
    // labelled chains 1 + 2 + 6 + 24, plus 12 labellings of the 2x2 square
    assert_eq!(found, 45);
}

proptest! {
    #[test]
    fn products_of_posets_are_posets(a in 0usize..19, b in 0usize..3) {
        let p = &all_posets(3)[a];
        let q = &all_posets(2)[b];
        let r = product(p, q);
        prop_assert!(validate_poset(&r).is_empty());
        prop_assert_eq!(r.related_pairs(), p.related_pairs() * q.related_pairs());
    }

    #[test]
    fn chain_tables_are_min_and_max(n in 1usize..6, a in 0usize..6, b in 0usize..6) {
        let p = chain_lattice(n);
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(p.t(a, b), a.min(b));
        prop_assert_eq!(p.p(a, b), a.max(b));
    }
}

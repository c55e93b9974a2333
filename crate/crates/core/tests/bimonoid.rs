use std::sync::Arc;

use medial_ldc::bimonoid::*;
use medial_ldc::category::{Smldc, Tag};
use medial_ldc::palgebra::{boolean_square, chain_lattice, two_element_lattice, PosetalSMLDC};
use medial_ldc::pcoh::{hom_set, probe_representatives, PCoh, PCohMorphism, PCohObject};
use medial_ldc::rel::Rel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn two() -> (Arc<PosetalSMLDC>, PCoh) {
    let p = Arc::new(two_element_lattice());
    (p.clone(), PCoh::new(p))
}

fn empty_like(f: &PCohMorphism) -> PCohMorphism {
    PCohMorphism::new(f.src.clone(), f.tgt.clone(), Rel::empty(f.src.size(), f.tgt.size())).unwrap()
}

fn set_over_two(model: &PCoh, p: &Arc<PosetalSMLDC>) -> Vec<PCohBimonoid> {
    probe_representatives(p, 2)
        .iter()
        .flat_map(|o| enumerate_bimonoids(model, o).unwrap())
        .collect()
}

#[test]
fn unit_bimonoids_validate() {
    let (_, model) = two();
    let (t, b) = unit_bimonoids(&model).unwrap();
    assert!(validate_bimonoid(&model, &t).unwrap().is_valid());
    assert!(validate_bimonoid(&model, &b).unwrap().is_valid());
    assert_eq!(t.carrier, model.tensor_unit());
    assert_eq!(b.carrier, model.par_unit());
}

#[test]
fn empty_counit_breaks_counitality() {
    let (_, model) = two();
    let (mut t, _) = unit_bimonoids(&model).unwrap();
    t.counit = empty_like(&t.counit);
    let r = validate_bimonoid(&model, &t).unwrap();
    assert!(r.failing.contains(&"CM.2".to_string()), "{:?}", r.failing);
}

#[test]
fn wrong_endpoints_are_input_errors() {
    let (p, model) = two();
    let (mut t, _) = unit_bimonoids(&model).unwrap();
    let c = probe_representatives(&p, 2).pop().unwrap();
    t.delta = model.identity(&c);
    assert!(validate_bimonoid(&model, &t).is_err());
}

#[test]
fn products_of_unit_bimonoids() {
    let (_, model) = two();
    let (t, b) = unit_bimonoids(&model).unwrap();
    let tt = tensor_bimonoid(&model, &t, &t).unwrap();
    assert_eq!(tt.carrier, model.tensor_obj(&t.carrier, &t.carrier).unwrap());
    assert!(validate_bimonoid(&model, &tt).unwrap().is_valid());
    let bb = par_bimonoid(&model, &b, &b).unwrap();
    assert_eq!(bb.carrier, model.par_obj(&b.carrier, &b.carrier).unwrap());
    assert!(validate_bimonoid(&model, &bb).unwrap().is_valid());
    let tb = tensor_bimonoid(&model, &t, &b).unwrap();
    let expected = model
        .compose(
            &model.tensor_mor(&t.delta, &b.delta).unwrap(),
            &model
                .structural(Tag::FlipT, &[t.carrier.clone(), t.carrier.clone(), b.carrier.clone(), b.carrier.clone()])
                .unwrap(),
        )
        .unwrap();
    assert_eq!(tb.delta.rel, expected.rel);
    assert_eq!(tb.delta.rel, Rel::full(1, 1));
    assert!(validate_bimonoid(&model, &tb).unwrap().is_valid());
}

#[test]
fn morphism_examples() {
    let (_, model) = two();
    let (t, b) = unit_bimonoids(&model).unwrap();
    assert!(is_bimonoid_morphism(&model, &model.identity(&t.carrier), &t, &t).unwrap());
    let m = model.structural(Tag::NullaryMix, &[]).unwrap();
    assert!(is_bimonoid_morphism(&model, &m, &b, &t).unwrap());
    let e = empty_like(&m);
    assert!(!is_bimonoid_morphism(&model, &e, &b, &t).unwrap());
    assert!(failing_squares(&model, &e, &b, &t).unwrap().contains(&"unit"));
    assert!(is_bimonoid_morphism(&model, &model.identity(&t.carrier), &b, &t).is_err());
}

#[test]
fn enumeration_contains_the_unit_structures() {
    let (_, model) = two();
    let (t, b) = unit_bimonoids(&model).unwrap();
    assert!(enumerate_bimonoids(&model, &t.carrier).unwrap().contains(&t));
    assert!(enumerate_bimonoids(&model, &b.carrier).unwrap().contains(&b));
}

#[test]
fn enumeration_refuses_large_carriers() {
    let (p, model) = two();
    let three = medial_ldc::pcoh::probe_objects(&p, 3).pop().unwrap();
    assert!(enumerate_bimonoids(&model, &three).is_err());
}

/// All four-tuples of arrows, filtered by the full law check.
fn brute_force_bimonoids(model: &PCoh, a: &PCohObject) -> Vec<PCohBimonoid> {
    let mut out = Vec::new();
    let aa = model.tensor_obj(a, a).unwrap();
    let pa = model.par_obj(a, a).unwrap();
    for delta in hom_set(a, &aa).unwrap() {
        for counit in hom_set(a, &model.tensor_unit()).unwrap() {
            for mult in hom_set(&pa, a).unwrap() {
                for unit in hom_set(&model.par_unit(), a).unwrap() {
                    let b = MedialBimonoid {
                        carrier: a.clone(),
                        delta: delta.clone(),
                        counit: counit.clone(),
                        mult: mult.clone(),
                        unit,
                    };
                    if validate_bimonoid(model, &b).unwrap().is_valid() {
                        out.push(b);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force_on_points() {
    for p in [two_element_lattice(), chain_lattice(3), boolean_square()] {
        let p = Arc::new(p);
        let model = PCoh::new(p.clone());
        for o in probe_representatives(&p, 1) {
            let fast = enumerate_bimonoids(&model, &o).unwrap();
            let slow = brute_force_bimonoids(&model, &o);
            assert_eq!(fast.len(), slow.len(), "{:?}", o.to_json());
            assert!(fast.iter().all(|b| slow.contains(b)));
        }
    }
}

#[test]
fn enumeration_over_two_counts() {
    let (p, model) = two();
    let counts: Vec<usize> = probe_representatives(&p, 2)
        .iter()
        .map(|o| enumerate_bimonoids(&model, o).unwrap().len())
        .collect();
    assert_eq!(counts.iter().sum::<usize>(), 34);
    for b in set_over_two(&model, &p) {
        assert!(validate_bimonoid(&model, &b).unwrap().is_valid());
    }
}

#[test]
fn products_of_enumerated_bimonoids_validate() {
    let (p, model) = two();
    let set = set_over_two(&model, &p);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..150 {
        let a = &set[rng.gen_range(0..set.len())];
        let b = &set[rng.gen_range(0..set.len())];
        assert!(validate_bimonoid(&model, &tensor_bimonoid(&model, a, b).unwrap()).unwrap().is_valid());
        assert!(validate_bimonoid(&model, &par_bimonoid(&model, a, b).unwrap()).unwrap().is_valid());
    }
}

#[test]
fn structure_maps_are_bimonoid_morphisms() {
    let (p, model) = two();
    for b in set_over_two(&model, &p) {
        assert!(structure_maps_failing(&model, &b).unwrap().is_empty());
    }
}

#[test]
fn universal_examples() {
    let (_, model) = two();
    let (t, b) = unit_bimonoids(&model).unwrap();
    let r = check_product_universal(&model, &t, &t, &[t.clone(), b.clone()], UniversalOptions::default()).unwrap();
    assert!(r.pass(), "{:?}", r.failures);
    assert!(r.cases > 0);
    let r = check_product_universal(&model, &t, &b, std::slice::from_ref(&b), UniversalOptions::default()).unwrap();
    assert!(r.pass(), "{:?}", r.failures);
}

#[test]
fn mutated_pairing_is_reported() {
    let (_, model) = two();
    let (t, b) = unit_bimonoids(&model).unwrap();
    let opts = UniversalOptions { mutate_pairing: Some(0) };
    let r = check_product_universal(&model, &t, &t, &[t.clone(), b], opts).unwrap();
    assert!(!r.pass());
    assert!(r.failures.iter().any(|f| f.contains("commute") || f.contains("mediating")));
}

#[test]
fn shared_checker_agrees_with_the_direct_check() {
    let (p, model) = two();
    let set = set_over_two(&model, &p);
    let probes: Vec<PCohBimonoid> = set.iter().step_by(4).cloned().collect();
    let checker = UniversalChecker::new(&model, &probes).unwrap();
    for i in 0..probes.len() {
        for j in 0..probes.len() {
            let direct = check_product_universal(&model, &probes[i], &probes[j], &probes, UniversalOptions::default()).unwrap();
            let shared = checker.check(i, j, UniversalOptions::default()).unwrap();
            assert_eq!(direct, shared);
            assert!(direct.pass(), "{:?}", direct.failures);
        }
    }
    let bent = UniversalOptions { mutate_pairing: Some(1) };
    let direct = check_product_universal(&model, &probes[1], &probes[2], &probes, bent).unwrap();
    assert_eq!(direct, checker.check(1, 2, bent).unwrap());
}

#[test]
fn mu_examples() {
    let (_, model) = two();
    let (t, b) = unit_bimonoids(&model).unwrap();
    assert!(mu_zero_equals_mu_one(&model, [&t, &t, &t, &t]).unwrap());
    assert!(mu_zero_equals_mu_one(&model, [&b, &b, &b, &b]).unwrap());
    assert!(mu_zero_equals_mu_one(&model, [&t, &b, &b, &t]).unwrap());
    let m = mu_zero(&model, [&t, &b, &b, &t]).unwrap();
    let src = model
        .par_obj(&model.tensor_obj(&t.carrier, &b.carrier).unwrap(), &model.tensor_obj(&b.carrier, &t.carrier).unwrap())
        .unwrap();
    assert_eq!(m.src, src);
}

/// The memoized sweep must flag exactly the quadruples the direct composites disagree on,
/// including on structures broken on purpose.
#[test]
fn memoized_mu_matches_direct_composites() {
    let (p, model) = two();
    let mut set: Vec<PCohBimonoid> = set_over_two(&model, &p).into_iter().step_by(5).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..set.len() / 2 {
        let b = set[2 * k].clone();
        let mut bent = b.clone();
        match rng.gen_range(0..4) {
            0 => bent.delta = empty_like(&b.delta),
            1 => bent.counit = empty_like(&b.counit),
            2 => bent.mult = empty_like(&b.mult),
            _ => bent.unit = empty_like(&b.unit),
        }
        set.push(bent);
    }
    let fast = mu_zero_equals_mu_one_all(&model, &set).unwrap();
    let n = set.len();
    assert_eq!(fast.quadruples, n.pow(4));
    let mut slow = Vec::new();
    for q in 0..n.pow(4) {
        let idx = [q / (n * n * n), q / (n * n) % n, q / n % n, q % n];
        let bs = idx.map(|i| &set[i]);
        if !mu_zero_equals_mu_one(&model, bs).unwrap() {
            slow.push(idx);
        }
    }
    assert!(!slow.is_empty());
    assert_eq!(fast.failing, slow);
}

#[test]
fn fox_examples() {
    let two = fox_round_trip(&PosetalCLDC::new(two_element_lattice()).unwrap()).unwrap();
    assert!(two.pass(), "{two:?}");
    assert_eq!(two.b_size, 2);
    let sq = fox_round_trip(&PosetalCLDC::new(boolean_square()).unwrap()).unwrap();
    assert!(sq.pass(), "{sq:?}");
    assert_eq!(sq.b_size, 4);
    let c3 = fox_round_trip(&PosetalCLDC::new(chain_lattice(3)).unwrap()).unwrap();
    assert!(c3.pass(), "{c3:?}");
    assert_eq!(c3.bimonoids_per_element, vec![1, 1, 1]);
}

#[test]
fn non_cartesian_algebras_are_refused() {
    let mut p = two_element_lattice();
    std::mem::swap(&mut p.tensor, &mut p.par);
    assert!(PosetalCLDC::new(p).is_err());
}

#[test]
fn posetal_bimonoids_are_the_elements() {
    let p = Arc::new(boolean_square());
    let model = Posetal::new(p.clone());
    for x in 0..p.size() {
        assert_eq!(enumerate_bimonoids_in(&model, &x).unwrap().len(), 1);
    }
    let all: Vec<_> = (0..p.size()).flat_map(|x| enumerate_bimonoids_in(&model, &x).unwrap()).collect();
    let r = mu_zero_equals_mu_one_all(&model, &all).unwrap();
    assert!(r.failing.is_empty());
    let checker = UniversalChecker::new(&model, &all).unwrap();
    for i in 0..all.len() {
        for j in 0..all.len() {
            assert!(checker.check(i, j, UniversalOptions::default()).unwrap().pass());
        }
    }
}

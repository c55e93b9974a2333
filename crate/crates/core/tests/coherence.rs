use std::collections::BTreeSet;
use std::sync::Arc;

use medial_ldc::bimonoid::Posetal;
use medial_ldc::category::Tag;
use medial_ldc::coherence::*;
use medial_ldc::palgebra::{chain_lattice, trivial_algebra, two_element_lattice};
use medial_ldc::pcoh::{probe_objects, probe_representatives, Mutation, PCoh, PCohObject};
use medial_ldc::poset::FinPoset;

#[test]
fn catalog_examples() {
    let c = catalog();
    assert!(c.len() >= 38);
    assert_eq!(find_check("MLDC.1a").unwrap().arity, 5);
    assert_eq!(find_check("MIX.lemma").unwrap().arity, 0);
    assert!(find_check("no such check").is_none());
    let names: BTreeSet<&str> = c.iter().map(|x| x.name.as_str()).collect();
    assert_eq!(names.len(), c.len());
}

#[test]
fn catalog_covers_every_group() {
    let groups: BTreeSet<String> = catalog().into_iter().map(|c| c.group).collect();
    for g in [
        "LDC",
        "SLDC",
        "MIX",
        "DUO",
        "BDUO",
        "SymDuoFlip",
        "MLDC",
        "NullaryMixComposites",
        "FlipMedialDist",
        "MixFlipSquare",
        "Compactness",
    ] {
        assert!(groups.contains(g), "{g}");
    }
}

#[test]
fn both_sides_of_every_entry_have_one_type() {
    for c in catalog() {
        let (l, r) = c.parsed().unwrap();
        assert_eq!(l.typ().unwrap(), r.typ().unwrap(), "{}", c.name);
        let used = l.max_var().max(r.max_var()).map_or(0, |m| m + 1);
        assert_eq!(used, c.arity, "{}", c.name);
    }
}

#[test]
fn only_compactness_uses_the_partial_generators() {
    for c in catalog() {
        let (l, r) = c.parsed().unwrap();
        let mut tags = Vec::new();
        l.tags(&mut tags);
        r.tags(&mut tags);
        let partial = tags.iter().any(|t| matches!(t, Tag::PartialL | Tag::PartialR));
        assert_eq!(partial, c.needs_compact(), "{}", c.name);
    }
}

#[test]
fn run_check_examples() {
    let p = Arc::new(two_element_lattice());
    let model = PCoh::new(p.clone());
    let pt = PCohObject::point(1, p.clone()).unwrap();
    let mix = find_check("MIX").unwrap();
    assert_eq!(run_check(&mix, &model, &[pt.clone(), pt.clone()]).unwrap(), Outcome::Pass);
    let c2 = PCohObject::new(FinPoset::chain(2), vec![vec![0; 2]; 2], p.clone()).unwrap();
    let sldc = find_check("SLDC").unwrap();
    let objs = vec![c2; sldc.arity];
    assert_eq!(run_check(&sldc, &model, &objs).unwrap(), Outcome::Pass);
    assert!(run_check(&sldc, &model, &[pt]).is_err());
}

#[test]
fn corrupted_medial_is_caught() {
    let p = Arc::new(two_element_lattice());
    let model = PCoh::with_mutation(p, Mutation { tag: Tag::Medial, pair: 0 });
    let cfg = SweepConfig { sample_size: 300, ..SweepConfig::default() };
    let r = sweep_with(&model, 2, 0, &[find_check("MLDC.3a").unwrap()], &cfg);
    assert!(r.checks[0].failed > 0);
}

#[test]
fn sweep_over_points_passes() {
    let p = Arc::new(two_element_lattice());
    for seed in [0, 1, 99] {
        let r = sweep_algebra(&p, 1, seed);
        assert!(r.all_pass(), "{:?}", r.failing());
        assert_eq!(r.probe_objects, 2);
        let skipped: BTreeSet<&str> = r.skipped.iter().map(|s| s.as_str()).collect();
        let compact: BTreeSet<String> = catalog().into_iter().filter(|c| c.needs_compact()).map(|c| c.name).collect();
        assert_eq!(skipped, compact.iter().map(|s| s.as_str()).collect());
        assert!(r.checks.iter().all(|c| !c.sampled));
    }
}

#[test]
fn sweep_over_three_chain_points_passes() {
    let r = sweep_algebra(&Arc::new(chain_lattice(3)), 1, 0);
    assert!(r.all_pass(), "{:?}", r.failing());
}

#[test]
fn trivial_algebra_enables_compactness() {
    let r = sweep_algebra(&Arc::new(trivial_algebra()), 1, 0);
    assert!(r.skipped.is_empty());
    assert!(r.checks.iter().any(|c| c.group == "Compactness"));
    assert!(r.all_pass(), "{:?}", r.failing());
}

#[test]
fn sweep_reports_are_deterministic() {
    let p = Arc::new(two_element_lattice());
    let model = PCoh::new(p);
    let checks: Vec<DiagramCheck> = ["MLDC.1a", "SymDuoFlip.a", "MIX"].iter().map(|n| find_check(n).unwrap()).collect();
    let a = sweep_with(&model, 2, 7, &checks, &SweepConfig::default());
    let b = sweep_with(&model, 2, 7, &checks, &SweepConfig::default());
    assert_eq!(a, b);
    assert!(a.all_pass());
    let text = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<SweepReport>(&text).unwrap(), a);
}

#[test]
fn single_check_samples_like_the_full_sweep() {
    let p = Arc::new(two_element_lattice());
    let model = PCoh::new(p);
    let cfg = SweepConfig { exhaustive_limit: 10, sample_size: 5, stop_at_first_failure: false };
    let all = catalog();
    let full = sweep_with(&model, 1, 3, &all, &cfg);
    let one = sweep_with(&model, 1, 3, &[find_check("MLDC.2b").unwrap()], &cfg);
    let same = full.checks.iter().find(|c| c.check == "MLDC.2b").unwrap();
    assert_eq!(&one.checks[0], same);
}

#[test]
fn tuples_are_exhaustive_or_sampled() {
    let cfg = SweepConfig::default();
    let (t, sampled) = tuples_for(18, 3, 0, 0, &cfg);
    assert!(!sampled);
    assert_eq!(t.len(), 18 * 18 * 18);
    assert_eq!(t[1], vec![0, 0, 1]);
    assert_eq!(t.iter().collect::<BTreeSet<_>>().len(), t.len());
    let (s, sampled) = tuples_for(18, 5, 0, 4, &cfg);
    assert!(sampled);
    assert_eq!(s.len(), cfg.sample_size);
    assert!(s.iter().flatten().all(|&k| k < 18));
    assert_eq!(tuples_for(18, 5, 0, 4, &cfg).0, s);
    assert_ne!(tuples_for(18, 5, 0, 5, &cfg).0, s);
    assert_ne!(tuples_for(18, 5, 1, 4, &cfg).0, s);
    let (z, _) = tuples_for(18, 0, 0, 0, &cfg);
    assert_eq!(z, vec![Vec::<usize>::new()]);
}

#[test]
fn stop_at_first_failure_halts_the_sweep() {
    let p = Arc::new(two_element_lattice());
    let model = PCoh::with_mutation(p, Mutation { tag: Tag::Medial, pair: 0 });
    let cfg = SweepConfig { stop_at_first_failure: true, ..SweepConfig::default() };
    let r = sweep_with(&model, 1, 0, &catalog(), &cfg);
    assert!(!r.all_pass());
    let last = r.checks.last().unwrap();
    assert_eq!(last.failed, 1);
    assert_eq!(last.failures.len(), 1);
    assert_eq!(r.failing().len(), 1);
}

#[test]
fn counterexamples_carry_their_objects() {
    let p = Arc::new(two_element_lattice());
    let model = PCoh::with_mutation(p.clone(), Mutation { tag: Tag::DeltaL, pair: 0 });
    let cfg = SweepConfig { sample_size: 300, ..SweepConfig::default() };
    let r = sweep_with(&model, 2, 0, &[find_check("LDC.2a").unwrap()], &cfg);
    let c = &r.checks[0];
    assert!(c.failed > 0);
    let f = &c.failures[0];
    assert_eq!(f.objs.len(), find_check("LDC.2a").unwrap().arity);
    assert!(f.entry.is_some() || f.error.is_some());
    let objs: Vec<PCohObject> = f.objs.iter().map(|j| PCohObject::from_json(j, p.clone()).unwrap()).collect();
    assert_ne!(run_check(&find_check("LDC.2a").unwrap(), &model, &objs).ok(), Some(Outcome::Pass));
}

/// The equations also hold in the algebra itself, read as a thin category.
#[test]
fn catalog_holds_in_posetal_algebras() {
    for p in [two_element_lattice(), chain_lattice(3), trivial_algebra()] {
        let n = p.size();
        let compact = p.top == p.bot;
        let model = Posetal { algebra: Arc::new(p) };
        let objs: Vec<usize> = (0..n).collect();
        for c in catalog() {
            if c.needs_compact() && !compact {
                continue;
            }
            let (tuples, _) = tuples_for(n, c.arity, 0, 0, &SweepConfig { exhaustive_limit: 2000, sample_size: 500, stop_at_first_failure: false });
            for t in tuples {
                let args: Vec<usize> = t.iter().map(|&k| objs[k]).collect();
                assert_eq!(run_check(&c, &model, &args).unwrap(), Outcome::Pass, "{} at {t:?}", c.name);
            }
        }
    }
}

#[test]
fn probe_counts() {
    let p = Arc::new(two_element_lattice());
    assert_eq!(probe_objects(&p, 1).len(), 2);
    assert_eq!(probe_objects(&p, 2).len(), 18);
    assert_eq!(probe_representatives(&p, 2).len(), 12);
}

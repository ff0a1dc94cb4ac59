use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::groups::{FiniteSet, GroupDescriptor, GroupElement};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn z() -> GroupDescriptor {
    GroupDescriptor::FreeAbelian(1)
}

fn ints(g: &GroupDescriptor, r: std::ops::RangeInclusive<i64>) -> FiniteSet {
    r.map(|n| g.int(n)).collect()
}

fn ball_set(g: &GroupDescriptor, r: usize) -> FiniteSet {
    g.ball(r).unwrap().into_iter().collect()
}

#[test]
fn folner_on_integers() {
    let g = z();
    let x = SubsetPredicate::whole(g.clone());
    let k = ints(&g, -1..=1);

    let explicit = FolnerStrategy::Explicit(vec![ints(&g, 0..=5)]);
    let out = folner_search(&x, &k, &q(1, 2), &explicit).unwrap();
    let w = out.witness().unwrap();
    assert_eq!(w.counts, (8, 6));
    assert!(w.verify(&x).unwrap());

    let out = folner_search(&x, &k, &q(1, 10), &FolnerStrategy::Balls { r_max: 25 }).unwrap();
    match &out {
        FolnerOutcome::Found { witness, index, .. } => {
            assert_eq!(*index, 10);
            assert_eq!(witness.f, ints(&g, -10..=10));
            assert_eq!(witness.counts, (23, 21));
        }
        _ => panic!("expected a witness"),
    }
}

#[test]
fn folner_fails_on_free_group() {
    let g = GroupDescriptor::Free(2);
    let x = SubsetPredicate::whole(g.clone());
    let k = ball_set(&g, 1);
    let out = folner_search(&x, &k, &q(1, 2), &FolnerStrategy::Balls { r_max: 6 }).unwrap();
    match out {
        FolnerOutcome::NotFound { tried, best_ratio } => {
            assert_eq!(tried.len(), 7);
            assert!(tried.iter().all(|t| t.ratio.clone().unwrap() > q(2, 1)));
            assert!(best_ratio.unwrap() > q(3, 1));
        }
        _ => panic!("free group should have no Følner set here"),
    }
}

#[test]
fn folner_rejects_bad_input() {
    let g = z();
    let x = SubsetPredicate::whole(g.clone());
    let k = ints(&g, -1..=1);
    assert!(folner_search(&x, &FiniteSet::new(), &q(1, 2), &FolnerStrategy::Balls { r_max: 2 }).is_err());
    assert!(folner_search(&x, &k, &q(0, 1), &FolnerStrategy::Balls { r_max: 2 }).is_err());
}

#[test]
fn folner_witness_json_round_trip() {
    let g = z();
    let x = SubsetPredicate::whole(g.clone());
    let k = ints(&g, -1..=1);
    let out = folner_search(&x, &k, &q(1, 1), &FolnerStrategy::Balls { r_max: 5 }).unwrap();
    let w = out.witness().unwrap();
    let (g2, w2) = FolnerWitness::from_json(&w.to_json(&g)).unwrap();
    assert_eq!(g2, g);
    assert_eq!(&w2, w);
    let mut bad = w2.clone();
    bad.counts.0 += 1;
    assert!(!bad.verify(&x).unwrap());
}

#[test]
fn expansion_profiles() {
    let g = z();
    let x = SubsetPredicate::whole(g.clone());
    let prof = expansion_profile(&x, &ints(&g, -1..=1), 3).unwrap();
    for (r, p) in prof.iter().enumerate() {
        let r = r as i64;
        assert_eq!(p.clone().unwrap(), q(2 * r + 3, 2 * r + 1));
    }
    let f2 = GroupDescriptor::Free(2);
    let prof = expansion_profile(&SubsetPredicate::whole(f2.clone()), &ball_set(&f2, 1), 2).unwrap();
    assert_eq!(prof[1].clone().unwrap(), q(17, 5));
    let id: FiniteSet = [f2.identity()].into_iter().collect();
    let prof = expansion_profile(&SubsetPredicate::whole(f2.clone()), &id, 0).unwrap();
    assert_eq!(prof[0].clone().unwrap(), q(1, 1));
}

#[test]
fn injections_on_integers_are_infeasible() {
    let g = z();
    let k = ints(&g, -1..=1);
    let v: Vec<GroupElement> = (0..=4).map(|n| g.int(n)).collect();
    let w: Vec<GroupElement> = g.set_product(&k, &v.iter().cloned().collect()).unwrap().into_iter().collect();
    assert_eq!(w.len(), 7);
    match find_two_to_one_injection(&g, &v, &w, &k).unwrap() {
        InjectionOutcome::Infeasible { violation, max_flow } => {
            assert!(max_flow < 10);
            assert!(violation.verify(&g, &v, &w, &k));
        }
        _ => panic!("Z has no two-to-one injection"),
    }
    let empty = find_two_to_one_injection(&g, &[], &w, &k).unwrap();
    assert!(empty.witness().unwrap().alpha.is_empty());
}

#[test]
fn injections_on_free_group_exist() {
    let g = GroupDescriptor::Free(2);
    let k = ball_set(&g, 1);
    let v = g.ball(2).unwrap();
    let w = g.ball(3).unwrap();
    assert_eq!((v.len(), w.len()), (17, 53));
    let out = find_two_to_one_injection(&g, &v, &w, &k).unwrap();
    let wit = out.witness().expect("F2 is paradoxical");
    assert!(wit.verify(&g));
    let (g2, back) = InjectionWitness::from_json(&wit.to_json(&g)).unwrap();
    assert!(back.verify(&g2));

    let mut broken = wit.clone();
    let first = broken.v[0].clone();
    let target = broken.alpha[&first].clone();
    broken.beta.insert(first, target);
    assert!(!broken.verify(&g));
}

#[test]
fn equidecompositions() {
    let g = z();
    let a = ints(&g, 0..=1);
    let w = EquidecompositionWitness {
        pieces: vec![ints(&g, 0..=0), ints(&g, 1..=1)],
        translators: vec![g.int(2), g.int(4)],
    };
    let b: FiniteSet = [g.int(2), g.int(5)].into_iter().collect();
    assert!(verify_equidecomposition(&g, &w, &a, &b));
    let trivial = EquidecompositionWitness { pieces: vec![a.clone()], translators: vec![g.identity()] };
    assert!(verify_equidecomposition(&g, &trivial, &a, &a));
    let overlapping = EquidecompositionWitness {
        pieces: vec![ints(&g, 0..=0), ints(&g, 1..=1)],
        translators: vec![g.int(3), g.int(2)],
    };
    let b3: FiniteSet = [g.int(3)].into_iter().collect();
    assert!(!verify_equidecomposition(&g, &overlapping, &a, &b3));
}

#[test]
fn subset_predicates() {
    let g = GroupDescriptor::BaumslagSolitar(2);
    let x = SubsetPredicate::new(g.clone(), SubsetRule::BsX).unwrap();
    let x0 = SubsetPredicate::new(g.clone(), SubsetRule::BsX0).unwrap();
    let e = g.bs("3/2", 1).unwrap();
    assert!(!x.contains(&e));
    assert!(x.contains(&g.bs("3", 1).unwrap()));
    assert!(!x0.contains(&g.bs("3", 1).unwrap()));
    assert!(x0.contains(&g.bs("-4", 7).unwrap()));
    assert!(SubsetPredicate::new(z(), SubsetRule::BsX).is_err());
    // (t, m)^{-1} = (-t/2^m, -m); inverting (1, 1) gives (-1/2, -1), not in X.
    let inv = x.inverted();
    assert!(!inv.contains(&g.bs("1", 1).unwrap()));
    assert!(inv.contains(&g.bs("1", -1).unwrap()));
    assert_eq!(inv.inverted(), x);
    let table = SubsetPredicate::new(
        z(),
        SubsetRule::UserTable { table: [(z().int(0), false)].into_iter().collect(), default: true },
    )
    .unwrap();
    assert!(!table.contains(&z().int(0)));
    assert!(table.contains(&z().int(9)));
}

#[test]
fn bs_checks_pass() {
    for (k, r) in [(2, 4), (3, 3), (2, 0)] {
        let rep = bs_example_check(k, r).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
    let rep = bs_example_check(2, 0).unwrap();
    assert_eq!(rep.ball_size, 1);
    assert!(bs_example_check(1, 2).is_err());
}

#[test]
fn rosenblatt_examples() {
    let g = GroupDescriptor::BaumslagSolitar(2);
    let e = |t: &str, m: i64| g.bs(t, m).unwrap();
    let u = vec![e("0", 0)];
    let v = vec![e("0", 0), e("1/2", 0)];
    let w = rosenblatt_find(2, &u, &v).unwrap();
    assert_eq!(w.g, e("1/2", 0));
    assert_eq!((w.count_u, w.count_v), (0, 1));
    assert!(w.verify(2, &u, &v));

    let w = rosenblatt_find(2, &[], &[e("0", 0)]).unwrap();
    assert_eq!(w.g, g.identity());

    let u = vec![e("1/2", 1)];
    let v = vec![e("0", 0), e("1", 3)];
    let w = rosenblatt_find(2, &u, &v).unwrap();
    assert_eq!(w.g, g.identity());
    assert_eq!((w.count_u, w.count_v), (0, 2));
    assert!(w.verify(2, &u, &v));

    assert!(rosenblatt_find(2, &v, &u).is_err());
}

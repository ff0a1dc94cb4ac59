//! Weyl products against naive leftmost string rewriting, and `φ`.

mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use common::*;
use ugnkit::algebras::weyl::WeylAlgebra;
use ugnkit::rings::{Elem, Ring};

fn algebras() -> Vec<(WeylAlgebra, Vec<i64>, Vec<i64>)> {
    vec![
        (WeylAlgebra::classical(1).unwrap(), vec![1], vec![1]),
        (WeylAlgebra::new(Ring::Integers, vec![Elem::int(-1)], vec![Elem::int(3)]).unwrap(), vec![-1], vec![3]),
        (
            WeylAlgebra::new(Ring::Integers, vec![Elem::int(1), Elem::int(-1)], vec![Elem::int(1), Elem::int(2)]).unwrap(),
            vec![1, -1],
            vec![1, 2],
        ),
    ]
}

#[test]
fn products_match_naive_rewriting() {
    for (idx, (alg, a, b)) in algebras().into_iter().enumerate() {
        let mut r = rng(100 + idx as u64);
        for _ in 0..200 {
            let u = random_weyl_word(&mut r, alg.n(), 8);
            let v = random_weyl_word(&mut r, alg.n(), 8);
            let engine = alg.mul(&weyl_eval(&alg, &u), &weyl_eval(&alg, &v));
            let mut uv = u.clone();
            uv.extend(&v);
            let naive = weyl_naive_normal(&a, &b, BTreeMap::from([(uv, BigInt::from(1))]));
            assert_eq!(weyl_terms(&engine), naive, "{u:?} * {v:?}");
        }
    }
}

#[test]
fn classical_weyl_acts_as_differential_operators() {
    // x ↦ t·, y ↦ d/dt on Z[t]; check on t^0..t^6
    let alg = WeylAlgebra::classical(1).unwrap();
    let mut r = rng(7);
    let apply = |e: &ugnkit::algebras::weyl::WeylElem, d: u32| -> BTreeMap<u32, BigInt> {
        let mut out = BTreeMap::new();
        for ((w, l), c) in e.terms() {
            let Elem::Int(c) = c else { unreachable!() };
            if *l > d {
                continue;
            }
            // y^l t^d = d!/(d-l)! t^{d-l}
            let falling: BigInt = (0..*l).map(|i| BigInt::from(d - i)).product();
            *out.entry(d - l + w.len() as u32).or_insert_with(|| BigInt::from(0)) += c * falling;
        }
        out.retain(|_, c| c != &BigInt::from(0));
        out
    };
    for _ in 0..100 {
        let w = random_weyl_word(&mut r, 1, 6);
        let e = weyl_eval(&alg, &w);
        for d in 0..=6u32 {
            // apply letters right to left
            let mut poly: BTreeMap<u32, BigInt> = BTreeMap::from([(d, BigInt::from(1))]);
            for l in w.iter().rev() {
                let mut next = BTreeMap::new();
                for (p, c) in poly {
                    match l {
                        Some(_) => *next.entry(p + 1).or_insert_with(|| BigInt::from(0)) += c,
                        None if p > 0 => *next.entry(p - 1).or_insert_with(|| BigInt::from(0)) += c * BigInt::from(p),
                        None => {}
                    }
                }
                poly = next;
            }
            poly.retain(|_, c| c != &BigInt::from(0));
            assert_eq!(apply(&e, d), poly, "{w:?} on t^{d}");
        }
    }
}

#[test]
fn phi_is_multiplicative_on_degree_zero() {
    for (idx, (alg, _, _)) in algebras().into_iter().enumerate() {
        let mut r = rng(200 + idx as u64);
        for _ in 0..100 {
            let (p, q) = (random_degree_zero(&mut r, &alg), random_degree_zero(&mut r, &alg));
            let lhs = alg.phi0(&alg.mul(&p, &q)).unwrap();
            let rhs = alg.base().mul(&alg.phi0(&p).unwrap(), &alg.phi0(&q).unwrap());
            assert_eq!(lhs, rhs);
        }
        assert!(alg.phi0(&alg.x(1)).is_err());
    }
}

#[test]
fn normal_forms_are_fixed_by_reparsing() {
    let (alg, _, _) = algebras().remove(2);
    let mut r = rng(300);
    for _ in 0..100 {
        let e = weyl_eval(&alg, &random_weyl_word(&mut r, 2, 8));
        assert_eq!(alg.parse(&alg.format(&e)).unwrap(), e);
    }
}

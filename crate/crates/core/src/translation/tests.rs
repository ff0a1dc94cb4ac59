use std::collections::BTreeMap;

use super::*;
use crate::amenability::{find_two_to_one_injection, SubsetRule};
use crate::groups::GroupDescriptor;
use crate::rings::CertificateStatus;

fn z() -> GroupDescriptor {
    GroupDescriptor::FreeAbelian(1)
}

fn whole_z() -> SubsetPredicate {
    SubsetPredicate::whole(z())
}

/// `Z` minus a few points, so that guards matter.
fn holey_z() -> SubsetPredicate {
    let table = [-3, 0, 4].iter().map(|&n| (z().int(n), false)).collect();
    SubsetPredicate::new(z(), SubsetRule::UserTable { table, default: true }).unwrap()
}

fn elem(x: &SubsetPredicate, ring: &Ring, terms: &[(i64, i64, &[(i64, i64)])]) -> TranslationElement {
    let g = x.group().clone();
    let terms = terms
        .iter()
        .map(|(shift, default, table)| Term {
            shift: g.int(*shift),
            coeff: CoeffFn {
                default: ring.from_int(*default),
                table: table.iter().map(|(p, v)| (g.int(*p), ring.from_int(*v))).collect(),
            },
            guards: FiniteSet::new(),
        })
        .collect();
    TranslationElement::from_terms(x.clone(), ring.clone(), terms).unwrap()
}

/// `(MN)(x,y) = Σ_{z ∈ X} M(x,z) N(z,y)`, summed over a wide interval.
fn convolution(m: &TranslationElement, n: &TranslationElement, x: i64, y: i64, reach: i64) -> Elem {
    let g = m.group();
    let r = m.ring();
    let mut acc = r.zero();
    for zz in (x - reach)..=(x + reach) {
        let p = g.int(zz);
        if m.subset().contains(&p) {
            let t = r.mul(&m.entry(&g.int(x), &p).unwrap(), &n.entry(&p, &g.int(y)).unwrap());
            acc = r.add(&acc, &t);
        }
    }
    acc
}

fn samples(ring: &Ring, x: &SubsetPredicate) -> Vec<TranslationElement> {
    vec![
        elem(x, ring, &[(1, 1, &[])]),
        elem(x, ring, &[(0, 2, &[(1, 5)]), (-2, 0, &[(0, 3), (2, -1)])]),
        elem(x, ring, &[(2, -1, &[(-1, 4)]), (1, 3, &[])]),
        elem(x, ring, &[(-1, 1, &[(2, 0)]), (0, 1, &[])]),
    ]
}

fn in_x(x: &SubsetPredicate, n: i64) -> bool {
    x.contains(&z().int(n))
}

#[test]
fn entry_rule() {
    let r = Ring::Integers;
    let x = whole_z();
    let id = TranslationElement::identity(x.clone(), r.clone());
    assert_eq!(id.entry(&z().int(2), &z().int(2)).unwrap(), Elem::int(1));
    assert_eq!(id.entry(&z().int(2), &z().int(3)).unwrap(), Elem::int(0));
    let s = TranslationElement::shift(x.clone(), r.clone(), z().int(2));
    assert_eq!(s.entry(&z().int(3), &z().int(1)).unwrap(), Elem::int(1));
    let twice = s.add(&s).unwrap();
    assert_eq!(twice.terms().len(), 1);
    assert_eq!(twice.entry(&z().int(3), &z().int(1)).unwrap(), Elem::int(2));
    let e = elem(&holey_z(), &r, &[(0, 1, &[])]);
    assert!(e.entry(&z().int(0), &z().int(1)).is_err());
}

#[test]
fn products_match_convolution() {
    let r = Ring::Integers;
    for x in [whole_z(), holey_z()] {
        let ss = samples(&r, &x);
        for m in &ss {
            for n in &ss {
                let p = m.mul(n).unwrap();
                for a in -6..=6 {
                    for b in -6..=6 {
                        if in_x(&x, a) && in_x(&x, b) {
                            let got = p.entry(&z().int(a), &z().int(b)).unwrap();
                            assert_eq!(got, convolution(m, n, a, b, 8), "{m} * {n} at ({a}, {b})");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn shifts_compose() {
    let r = Ring::Integers;
    let x = whole_z();
    let s1 = TranslationElement::shift(x.clone(), r.clone(), z().int(1));
    let s2 = TranslationElement::shift(x.clone(), r.clone(), z().int(2));
    assert_eq!(s1.mul(&s1).unwrap(), s2);
    let id = TranslationElement::identity(x.clone(), r.clone());
    for m in samples(&r, &x) {
        assert_eq!(m.mul(&id).unwrap(), m);
        assert_eq!(id.mul(&m).unwrap(), m);
    }
}

#[test]
fn transpose_laws() {
    let r = Ring::integers_mod(7).unwrap();
    let window: Vec<_> = (-6..=6).map(|n| z().int(n)).collect();
    for x in [whole_z(), holey_z()] {
        let ss = samples(&r, &x);
        for m in &ss {
            let t = m.transpose();
            for a in window.iter().filter(|p| x.contains(p)) {
                for b in window.iter().filter(|p| x.contains(p)) {
                    assert_eq!(t.entry(a, b).unwrap(), m.entry(b, a).unwrap());
                }
            }
            for n in &ss {
                let lhs = m.mul(n).unwrap().transpose();
                let rhs = n.transpose().mul(&m.transpose()).unwrap();
                assert!(lhs.agrees_on(&rhs, &window).unwrap());
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let r = Ring::Integers;
    let x = holey_z();
    for m in samples(&r, &x) {
        let p = m.mul(&m.transpose()).unwrap();
        let back = TranslationElement::from_json(&x, &r, &p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}

fn right_elem(x: &SubsetPredicate, r: &Ring, terms: &[(i64, i64, &[(i64, i64)])]) -> RightTranslationElement {
    let g = x.group().clone();
    let terms = terms
        .iter()
        .map(|(shift, default, table)| RightTerm {
            shift: g.int(*shift),
            coeff: CoeffFn {
                default: r.from_int(*default),
                table: table.iter().map(|(p, v)| (g.int(*p), r.from_int(*v))).collect(),
            },
            guards: FiniteSet::new(),
        })
        .collect();
    RightTranslationElement::new(x.clone(), r.clone(), terms).unwrap()
}

#[test]
fn right_translation_isomorphism() {
    let r = Ring::Integers;
    let x = holey_z();
    let id = RightTranslationElement::identity(x.clone(), r.clone());
    assert_eq!(
        right_translation_iso(&id).unwrap(),
        TranslationElement::identity(x.inverted(), r.clone())
    );

    // On Z the right shift by 1 has ones at (x, x+1); its image has ones at
    // (-x, -x-1), the left shift by 1 on the negated index set.
    let s = RightTranslationElement::shift(whole_z(), r.clone(), z().int(1));
    let img = right_translation_iso(&s).unwrap();
    assert_eq!(img, TranslationElement::shift(whole_z(), r.clone(), z().int(1)));
    assert_eq!(img.entry(&z().int(-3), &z().int(-4)).unwrap(), Elem::int(1));

    let ms = [
        right_elem(&x, &r, &[(1, 2, &[(2, 7)]), (0, 1, &[])]),
        right_elem(&x, &r, &[(-2, 1, &[(-1, 3)])]),
    ];
    for m in &ms {
        let mstar = right_translation_iso(m).unwrap();
        for a in -6..=6 {
            for b in -6..=6 {
                if in_x(&x, a) && in_x(&x, b) {
                    assert_eq!(
                        mstar.entry(&z().int(-a), &z().int(-b)).unwrap(),
                        m.entry(&z().int(a), &z().int(b)).unwrap()
                    );
                }
            }
        }
        for n in &ms {
            let prod = m.mul(n).unwrap();
            for a in -5..=5 {
                for b in -5..=5 {
                    if !(in_x(&x, a) && in_x(&x, b)) {
                        continue;
                    }
                    let mut direct = r.zero();
                    for c in (a - 8)..=(a + 8) {
                        if in_x(&x, c) {
                            let t = r.mul(
                                &m.entry(&z().int(a), &z().int(c)).unwrap(),
                                &n.entry(&z().int(c), &z().int(b)).unwrap(),
                            );
                            direct = r.add(&direct, &t);
                        }
                    }
                    assert_eq!(prod.entry(&z().int(a), &z().int(b)).unwrap(), direct);
                }
            }
        }
    }
}

fn leavitt_translation_certificate() -> TranslationCertificate {
    let ring: Ring = "L(1,2)".parse().unwrap();
    let x = whole_z();
    let diag = |s: &str| TranslationElement::diagonal(x.clone(), ring.clone(), CoeffFn::constant(ring.parse_elem(s).unwrap()));
    TranslationCertificate::new(
        x.clone(),
        ring.clone(),
        1,
        2,
        vec![diag("e1'"), diag("e2'")],
        vec![diag("e1"), diag("e2")],
    )
    .unwrap()
}

#[test]
fn compression_examples() {
    let cert = leavitt_translation_certificate();
    let ring = cert.ring.clone();
    let k0: FiniteSet = [z().int(0)].into_iter().collect();
    let f0: FiniteSet = [z().int(0)].into_iter().collect();
    let rep = compress_certificate(&cert, &f0, Some(&k0)).unwrap();
    assert_eq!(rep.status, CertificateStatus::ValidBGN);
    let c = &rep.certificate;
    assert_eq!((c.a().rows(), c.a().cols()), (2, 1));
    assert_eq!(c.a().get(0, 0), &ring.parse_elem("e1'").unwrap());
    assert_eq!(c.b().get(0, 1), &ring.parse_elem("e2").unwrap());

    let f01: FiniteSet = [z().int(0), z().int(1)].into_iter().collect();
    let rep = compress_certificate(&cert, &f01, None).unwrap();
    assert_eq!(rep.k, k0);
    assert_eq!((rep.certificate.a().rows(), rep.certificate.a().cols()), (4, 2));
    assert!(rep.certificate.a().mul(rep.certificate.b()).unwrap().is_identity());

    let padded: FiniteSet = (-1..=1).map(|n| z().int(n)).collect();
    assert!(matches!(compress_certificate(&cert, &f01, Some(&padded)), Err(Error::Precondition(_))));
    let lopsided: FiniteSet = [z().int(0), z().int(1)].into_iter().collect();
    assert!(compress_certificate(&cert, &f0, Some(&lopsided)).is_err());
}

#[test]
fn compression_rejects_a_broken_certificate() {
    let mut cert = leavitt_translation_certificate();
    cert.b.swap(0, 1);
    let f0: FiniteSet = [z().int(0)].into_iter().collect();
    assert!(matches!(compress_certificate(&cert, &f0, None), Err(Error::InvalidCertificate(_))));
}

#[test]
fn certificate_json_round_trip() {
    let cert = leavitt_translation_certificate();
    let back = TranslationCertificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn collapse_on_free_group() {
    let g = GroupDescriptor::Free(2);
    let k: FiniteSet = g.ball(1).unwrap().into_iter().collect();
    let v = g.ball(2).unwrap();
    let w = g.ball(3).unwrap();
    let wit = find_two_to_one_injection(&g, &v, &w, &k).unwrap().witness().unwrap().clone();
    let rep = collapse_matrices(&wit, &Ring::Integers).unwrap();
    assert!(rep.passed(), "{:?}", rep.checks);
    assert_eq!(rep.uncovered.len(), 53 - 34);

    let mut broken = wit.clone();
    let (x0, x1) = (broken.v[0].clone(), broken.v[1].clone());
    let shared = broken.alpha[&x0].clone();
    broken.alpha.insert(x1, shared);
    let rep = collapse_matrices(&broken, &Ring::Integers).unwrap();
    assert!(!rep.checks[0].holds);

    let empty = crate::amenability::InjectionWitness {
        v: vec![],
        w: vec![],
        k,
        alpha: BTreeMap::new(),
        beta: BTreeMap::new(),
    };
    let rep = collapse_matrices(&empty, &Ring::Integers).unwrap();
    assert!(rep.passed());
}

#[test]
fn skew_group_ring_isomorphism() {
    let cases = [
        ("C(2)", Ring::Integers),
        ("C(1)", Ring::Integers),
        ("C(2) x C(2)", Ring::integers_mod(3).unwrap()),
        ("C(3)", Ring::integers_mod(5).unwrap()),
    ];
    for (g, r) in cases {
        let g: GroupDescriptor = g.parse().unwrap();
        let rep = finite_group_iso(&g, &r, DEFAULT_ISO_ORDER_BOUND).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
    let c2: GroupDescriptor = "C(2)".parse().unwrap();
    let cs = skew_system(&c2, &Ring::Integers).unwrap();
    let swap = skew_to_matrix(&cs, &Ring::Integers, &cs.term(1, cs.base().one()));
    assert_eq!(swap.get(0, 1), &Elem::int(1));
    assert_eq!(swap.get(0, 0), &Elem::int(0));
    let c13: GroupDescriptor = "C(13)".parse().unwrap();
    assert!(finite_group_iso(&c13, &Ring::Integers, DEFAULT_ISO_ORDER_BOUND).is_err());
}

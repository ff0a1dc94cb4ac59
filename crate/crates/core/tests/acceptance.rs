//! The acceptance run: every criterion checked exactly, one line each.
//! Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::panic;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use common::*;
use ugnkit::algebras::leavitt::LeavittAlgebra;
use ugnkit::algebras::weyl::{ComponentBasis, WeylAlgebra};
use ugnkit::amenability::{
    bs_example_check, find_two_to_one_injection, folner_search, rosenblatt_find, FolnerOutcome, FolnerStrategy,
    InjectionOutcome, SubsetPredicate,
};
use ugnkit::graded::endo_graded_construction;
use ugnkit::groups::{FiniteSet, GroupDescriptor, GroupElement, KAdic};
use ugnkit::monoids::{Cnk, LeqVerdict, Mnkl, MnklElement, Rewrite, DEFAULT_CLOSURE_DEPTH};
use ugnkit::rings::{CertificateStatus, Elem, RankCertificate, Ring, RingHom, RingMatrix};
use ugnkit::translation::{
    collapse_matrices, compress_certificate, finite_group_iso, CoeffFn, TranslationCertificate, TranslationElement,
    DEFAULT_ISO_ORDER_BOUND,
};

type Outcome = Result<String, String>;

fn ok<T, E: Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn leavitt(n: usize) -> Result<Arc<LeavittAlgebra>, String> {
    Ok(Arc::new(ok(LeavittAlgebra::new(n, Ring::Integers))?))
}

fn leavitt_certificates() -> Outcome {
    for n in 2..=5 {
        let c = leavitt(n)?.rank_certificate();
        ensure(c.verify() == CertificateStatus::ValidBGN, || format!("n = {n}: {:?}", c.verify()))?;
        ensure((c.n(), c.m()) == (1, n), || format!("n = {n}: shape ({}, {})", c.n(), c.m()))?;
        ensure(ok(c.a().mul(c.b()))?.is_identity(), || format!("n = {n}: AB is not I_{n}"))?;
        ensure(ok(c.b().mul(c.a()))?.is_identity(), || format!("n = {n}: BA is not 1"))?;
    }
    Ok("n = 2..5: AB = I_n, BA = 1, ValidBGN".into())
}

fn matrix_unit_towers() -> Outcome {
    let mut checked = 0;
    for (n, l) in [(2, 1), (2, 2), (3, 1)] {
        let rep = ok(leavitt(n)?.matrix_units(l, None))?;
        ensure(rep.passed() && rep.all_degree_zero && rep.sum_is_one, || format!("(n, l) = ({n}, {l}): {rep:?}"))?;
        ensure(rep.product_law_checked == rep.size.pow(4), || format!("({n}, {l}) not exhaustive"))?;
        checked += rep.product_law_checked;
    }
    Ok(format!("{checked} product-law instances, sums and degrees hold"))
}

fn compression() -> Outcome {
    let z = GroupDescriptor::FreeAbelian(1);
    let x = SubsetPredicate::whole(z.clone());
    let ring: Ring = ok("L(1,2)".parse())?;
    let diag = |s: &str| -> Result<TranslationElement, String> {
        Ok(TranslationElement::diagonal(x.clone(), ring.clone(), CoeffFn::constant(ok(ring.parse_elem(s))?)))
    };
    let cert = ok(TranslationCertificate::new(
        x.clone(),
        ring.clone(),
        1,
        2,
        vec![diag("e1'")?, diag("e2'")?],
        vec![diag("e1")?, diag("e2")?],
    ))?;
    let set = |r: std::ops::RangeInclusive<i64>| -> FiniteSet { r.map(|n| z.int(n)).collect() };
    let rep = ok(compress_certificate(&cert, &set(0..=0), Some(&set(0..=0))))?;
    let c = &rep.certificate;
    ensure(rep.status == CertificateStatus::ValidBGN, || format!("F = {{0}}: {:?}", rep.status))?;
    ensure((c.a().rows(), c.a().cols(), c.b().rows(), c.b().cols()) == (2, 1, 1, 2), || "F = {0}: wrong shape".into())?;
    ensure(ok(c.a().mul(c.b()))?.is_identity(), || "F = {0}: A*B* is not I_2".into())?;
    let rep = ok(compress_certificate(&cert, &set(0..=1), Some(&set(0..=0))))?;
    let c = &rep.certificate;
    ensure(rep.status == CertificateStatus::ValidBGN, || format!("F = {{0,1}}: {:?}", rep.status))?;
    ensure(c.a().rows() == 4 && ok(c.a().mul(c.b()))?.is_identity(), || "F = {0,1}: A*B* is not I_4".into())?;
    let padded = compress_certificate(&cert, &set(0..=1), Some(&set(-1..=1)));
    ensure(matches!(padded, Err(ugnkit::Error::Precondition(_))), || format!("padded K accepted: {padded:?}"))?;
    Ok("2x1 with A*B* = I_2, 4x2 with A*B* = I_4, padded K rejected".into())
}

fn rank_collapse() -> Outcome {
    let g = GroupDescriptor::Free(2);
    let k: FiniteSet = ok(g.ball(1))?.into_iter().collect();
    let (v, w) = (ok(g.ball(2))?, ok(g.ball(3))?);
    let out = ok(find_two_to_one_injection(&g, &v, &w, &k))?;
    let wit = out.witness().ok_or("no injection witness for B2 -> B3")?;
    ensure(wit.verify(&g), || "injection witness does not verify".into())?;
    let rep = ok(collapse_matrices(wit, &Ring::Integers))?;
    let names: Vec<&str> = rep.checks.iter().map(|c| c.name).collect();
    ensure(rep.checks.len() == 5 && rep.passed(), || format!("{:?}", rep.checks))?;
    Ok(format!("{} hold exactly", names.join(", ")))
}

fn folner_dichotomy() -> Outcome {
    let eps = [q(1, 1), q(1, 2), q(1, 10)];
    let mut found = Vec::new();
    for g in [GroupDescriptor::FreeAbelian(1), GroupDescriptor::FreeAbelian(2)] {
        let x = SubsetPredicate::whole(g.clone());
        let k: FiniteSet = ok(g.ball(1))?.into_iter().collect();
        for e in &eps {
            match ok(folner_search(&x, &k, e, &FolnerStrategy::Balls { r_max: 25 }))? {
                FolnerOutcome::Found { witness, index, .. } => {
                    ensure(ok(witness.verify(&x))?, || format!("{g}, eps = {e}: witness does not verify"))?;
                    found.push(format!("{g}/{e}@r{index}"));
                }
                other => return Err(format!("{g}, eps = {e}: {other:?}")),
            }
        }
    }
    let f2 = GroupDescriptor::Free(2);
    let x = SubsetPredicate::whole(f2.clone());
    let k: FiniteSet = ok(f2.ball(1))?.into_iter().collect();
    for e in &eps {
        match ok(folner_search(&x, &k, e, &FolnerStrategy::Balls { r_max: 6 }))? {
            FolnerOutcome::NotFound { tried, .. } => {
                ensure(tried.len() == 7, || format!("F2: {} radii tried", tried.len()))?;
                for t in &tried {
                    let r = t.ratio.clone().ok_or("F2: missing ratio")?;
                    ensure(r > q(2, 1), || format!("F2: ratio {r} is not above 2"))?;
                }
            }
            other => return Err(format!("F2, eps = {e}: {other:?}")),
        }
    }
    Ok(format!("witnesses {}; F2 none up to r = 6, all ratios > 2", found.join(" ")))
}

fn matching_dichotomy() -> Outcome {
    let z = GroupDescriptor::FreeAbelian(1);
    let k: FiniteSet = (-1..=1).map(|n| z.int(n)).collect();
    for l in 2..=40 {
        let v: Vec<GroupElement> = (0..=l).map(|n| z.int(n)).collect();
        let w: Vec<GroupElement> = ok(z.set_product(&k, &v.iter().cloned().collect()))?.into_iter().collect();
        match ok(find_two_to_one_injection(&z, &v, &w, &k))? {
            InjectionOutcome::Infeasible { violation, .. } => {
                ensure(violation.verify(&z, &v, &w, &k), || format!("L = {l}: Hall set does not verify"))?;
            }
            InjectionOutcome::Found(_) => return Err(format!("L = {l}: Z admitted an injection")),
        }
    }
    let f2 = GroupDescriptor::Free(2);
    let k: FiniteSet = ok(f2.ball(1))?.into_iter().collect();
    for r in 0..=4 {
        let (v, w) = (ok(f2.ball(r))?, ok(f2.ball(r + 1))?);
        let out = ok(find_two_to_one_injection(&f2, &v, &w, &k))?;
        let wit = out.witness().ok_or_else(|| format!("F2 r = {r}: infeasible"))?;
        ensure(wit.verify(&f2), || format!("F2 r = {r}: witness does not verify"))?;
    }
    Ok("Z infeasible with verified Hall sets for L = 2..40; F2 witnesses for r = 0..4".into())
}

fn built_in_groups_up_to_8() -> Vec<GroupDescriptor> {
    let mut gs: Vec<GroupDescriptor> = (1..=8).map(GroupDescriptor::Cyclic).collect();
    for fs in [vec![2, 2], vec![2, 3], vec![2, 4], vec![2, 2, 2]] {
        gs.push(GroupDescriptor::DirectProduct(fs.into_iter().map(GroupDescriptor::Cyclic).collect()));
    }
    gs
}

fn skew_isomorphism() -> Outcome {
    let rings = [Ring::Integers, ok(Ring::integers_mod(5))?];
    let groups = built_in_groups_up_to_8();
    for g in &groups {
        for r in &rings {
            let rep = ok(finite_group_iso(g, r, DEFAULT_ISO_ORDER_BOUND))?;
            ensure(rep.passed(), || format!("{g} over {r}: {rep:?}"))?;
        }
    }
    Ok(format!("{} groups over Z and Z/5", groups.len()))
}

fn monoid_generating_numbers() -> Outcome {
    for n in 1..=20 {
        for k in 1..=20 {
            let c = ok(Cnk::new(n, k))?;
            ensure(c.generating_number() == n, || format!("gn(C({n},{k})) = {}", c.generating_number()))?;
            let table = CnkOracle::new(n, k, 260).leq_table(100);
            for lam in 0..=100u64 {
                for mu in 0..=100u64 {
                    ensure(c.leq(lam, mu) == table[lam as usize][mu as usize], || {
                        format!("C({n},{k}): {lam}a <= {mu}a disagrees with the closure")
                    })?;
                }
            }
        }
    }
    Ok("gn = n for n, k <= 20; closed form matches closure for lambda, mu <= 100".into())
}

fn box_elements(l: usize, max: u64) -> Vec<MnklElement> {
    let dims = 2 * l + 1;
    let total = (max + 1).pow(dims as u32);
    (0..total)
        .map(|mut code| {
            let mut digits = Vec::with_capacity(dims);
            for _ in 0..dims {
                digits.push(code % (max + 1));
                code /= max + 1;
            }
            MnklElement { u: digits[0], x: digits[1..=l].to_vec(), y: digits[l + 1..].to_vec() }
        })
        .collect()
}

fn separators() -> Outcome {
    let mut refuted = 0;
    let mut invariance = 0;
    for n in 1..=5 {
        for k in 1..=5 {
            for l in 1..=3 {
                let m = ok(Mnkl::new(n, k, l))?;
                for j in 1..=l {
                    let xj = ok(m.x(j))?;
                    for mu in 0..=6 {
                        for lam in mu + 1..=12 {
                            let (s, t) = (xj.scale(lam), xj.scale(mu));
                            match ok(m.leq(&s, &t, DEFAULT_CLOSURE_DEPTH))? {
                                LeqVerdict::No(sep) => {
                                    ensure(ok(m.separator_holds(&sep, &s, &t))?, || {
                                        format!("M({n},{k},{l}): separator for {lam}x{j} <= {mu}x{j} fails")
                                    })?;
                                    refuted += 1;
                                }
                                other => return Err(format!("M({n},{k},{l}): {lam}x{j} <= {mu}x{j} gave {other:?}")),
                            }
                        }
                    }
                }
                let mut rewrites = vec![Rewrite::SigmaUp, Rewrite::SigmaDown];
                rewrites.extend((1..=l).flat_map(|i| [Rewrite::SplitU(i), Rewrite::MergeU(i)]));
                for e in box_elements(l, if l == 3 { 1 } else { 2 }) {
                    for &r in &rewrites {
                        let Some(f) = m.apply(&e, r) else { continue };
                        ensure(ok(m.phi(&e))? == ok(m.phi(&f))?, || format!("phi changes under {r}"))?;
                        for j in 1..=l {
                            ensure(ok(m.psi(&e, j))? == ok(m.psi(&f, j))?, || format!("psi_{j} changes under {r}"))?;
                        }
                        invariance += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{refuted} strict inequalities refuted; phi, psi_j invariant on {invariance} rewrites"))
}

fn bs_witnesses() -> Outcome {
    for k in [2, 3] {
        for r in 0..=5 {
            let rep = ok(bs_example_check(k, r))?;
            ensure(rep.passed(), || format!("k = {k}, r = {r}: {rep:?}"))?;
        }
    }
    let mut rng = rng(10);
    for i in 0..50 {
        let k: u32 = if i % 2 == 0 { 2 } else { 3 };
        let g = GroupDescriptor::BaumslagSolitar(k);
        let elem = |r: &mut rand_chacha::ChaCha8Rng| GroupElement::BaumslagSolitar {
            t: KAdic::new(BigInt::from(r.gen_range(-30..=30)), r.gen_range(0..=3), k),
            m: r.gen_range(-3..=3),
        };
        let nv = rng.gen_range(1..=6);
        let nu = rng.gen_range(0..nv);
        let u: Vec<GroupElement> = (0..nu).map(|_| elem(&mut rng)).collect();
        let v: Vec<GroupElement> = (0..nv).map(|_| elem(&mut rng)).collect();
        let w = ok(rosenblatt_find(k, &u, &v))?;
        ensure(w.verify(k, &u, &v), || format!("pair {i}: witness {} does not verify", g.format_element(&w.g)))?;
    }
    Ok("k = 2, 3 with r <= 5; 50 random pairs verified".into())
}

fn weyl_corpora() -> Outcome {
    let algebras = [
        (ok(WeylAlgebra::classical(1))?, vec![1], vec![1]),
        (ok(WeylAlgebra::new(Ring::Integers, vec![Elem::int(-1)], vec![Elem::int(3)]))?, vec![-1], vec![3]),
        (ok(WeylAlgebra::new(Ring::Integers, vec![Elem::int(1), Elem::int(-1)], vec![Elem::int(1), Elem::int(2)]))?, vec![1, -1], vec![1, 2]),
    ];
    let mut r = rng(11);
    for i in 0..500 {
        let (alg, a, b) = &algebras[i % algebras.len()];
        let u = random_weyl_word(&mut r, alg.n(), 8);
        let v = random_weyl_word(&mut r, alg.n(), 8);
        let (eu, ev) = (weyl_eval(alg, &u), weyl_eval(alg, &v));
        let prod = alg.mul(&eu, &ev);
        let mut uv = u.clone();
        uv.extend(&v);
        let naive = weyl_naive_normal(a, b, BTreeMap::from([(uv, BigInt::from(1))]));
        ensure(weyl_terms(&prod) == naive, || format!("product {i}: {u:?} * {v:?}"))?;
        ensure(ok(alg.parse(&alg.format(&prod)))? == prod, || format!("product {i} is not a fixed point"))?;
    }
    for i in 0..200 {
        let (alg, _, _) = &algebras[i % algebras.len()];
        let (p, s) = (random_degree_zero(&mut r, alg), random_degree_zero(&mut r, alg));
        let lhs = ok(alg.phi0(&alg.mul(&p, &s)))?;
        let rhs = alg.base().mul(&ok(alg.phi0(&p))?, &ok(alg.phi0(&s))?);
        ensure(lhs == rhs, || format!("phi pair {i}"))?;
    }
    for (alg, _, _) in &algebras {
        let n = alg.n() as u8;
        for m in -4i64..=4 {
            let basis = alg.component_basis(m);
            let expected = match m {
                0 => ComponentBasis::DegreeZero,
                m if m < 0 => ComponentBasis::YPower(m.unsigned_abs() as u32),
                m => {
                    let mut words: Vec<Vec<u8>> = vec![vec![]];
                    for _ in 0..m {
                        words = words.iter().flat_map(|w| (1..=n).map(move |i| [w.clone(), vec![i]].concat())).collect();
                    }
                    words.sort();
                    ComponentBasis::XWords(words)
                }
            };
            ensure(basis == expected, || format!("degree {m}: {basis:?}"))?;
        }
        // every homogeneous component of a random product is recovered from
        // its right coordinates
        for _ in 0..40 {
            let e = weyl_eval(alg, &random_weyl_word(&mut r, alg.n(), 6));
            for d in alg.degrees(&e) {
                let part = alg.component(&e, d);
                let coords = ok(alg.right_coordinates(&part, d))?;
                let back = alg
                    .basis_elements(d)
                    .iter()
                    .zip(&coords)
                    .fold(alg.scalar(Elem::int(0)), |acc, (b, c)| alg.add(&acc, &alg.mul(b, c)));
                ensure(back == part, || format!("degree {d} coordinates do not reconstruct"))?;
                ensure(coords.iter().all(|c| alg.homogeneous_degree(c) == Some(0)), || "coordinate off degree 0".into())?;
            }
        }
    }
    Ok("500 products match rewriting, 200 phi pairs, bases for |m| <= 4".into())
}

fn certificate_algebra() -> Outcome {
    let mut checked = 0;
    for n in 2..=4 {
        let c = leavitt(n)?.rank_certificate();
        for target in 2..=6 {
            let e = ok(step(n).and_then(|s| s.extend(target)))?;
            ensure(e.verify() == CertificateStatus::ValidBGN, || format!("extend n = {n} to {target}"))?;
            checked += 1;
        }
        let o = ok(c.opposite())?;
        ensure(o.verify() == CertificateStatus::ValidBGN, || format!("opposite n = {n}"))?;
        ensure(ok(o.opposite())? == c, || format!("opposite is not an involution for n = {n}"))?;
        checked += 2;
    }
    let c = leavitt(2)?.rank_certificate();
    let r = c.ring().clone();
    let c24 = ok(RankCertificate::new(
        r.clone(),
        2,
        4,
        RingMatrix::block_diagonal(r.clone(), &[c.a(), c.a()]),
        RingMatrix::block_diagonal(r.clone(), &[c.b(), c.b()]),
    ))?;
    let up = ok(c24.block_up(2))?;
    ensure(up.verify() == CertificateStatus::ValidBGN, || "block up".into())?;
    let down = ok(up.block_down())?;
    ensure(down == c24 && down.verify() == CertificateStatus::ValidBGN, || "block round trip".into())?;
    let p = ok(RankCertificate::product(&[c.clone(), ok(step(3))?]))?;
    ensure(p.verify() == CertificateStatus::ValidBGN, || "product".into())?;
    for i in 0..2 {
        let proj = ok(RingHom::projection(p.ring(), i))?;
        ensure(ok(p.map_hom(&proj))?.verify() == CertificateStatus::ValidBGN, || format!("projection {i}"))?;
    }
    let zg: Ring = ok("Z[C(2)]".parse())?;
    let g = ok(zg.parse_elem("{1: 1}"))?;
    let gc = ok(RankCertificate::new(
        zg.clone(),
        1,
        1,
        ok(RingMatrix::new(zg.clone(), 1, 1, vec![g.clone()]))?,
        ok(RingMatrix::new(zg.clone(), 1, 1, vec![g]))?,
    ))?;
    let aug = ok(RingHom::augmentation(&zg))?;
    let pushed = ok(gc.map_hom(&aug))?;
    ensure(pushed.verify().is_valid() && *pushed.ring() == Ring::Integers, || "augmentation pushforward".into())?;
    checked += 6;
    Ok(format!("{checked} transformation outputs re-verified"))
}

/// The `(1, 2)` certificate `((e1*, e2*)ᵗ, (e1, e2))` over `L(1,n)`.
fn step(n: usize) -> ugnkit::Result<RankCertificate> {
    let r: Ring = format!("L(1,{n})").parse()?;
    let a = RingMatrix::new(r.clone(), 2, 1, vec![r.parse_elem("e1'")?, r.parse_elem("e2'")?])?;
    let b = RingMatrix::new(r.clone(), 1, 2, vec![r.parse_elem("e1")?, r.parse_elem("e2")?])?;
    RankCertificate::new(r, 1, 2, a, b)
}

fn endo_grading() -> Outcome {
    let cases = [
        (ok(Ring::integers_mod(5))?, GroupDescriptor::Cyclic(2), 2, 1, 1),
        (Ring::Integers, GroupDescriptor::Cyclic(2), 2, 1, 1),
        (Ring::Integers, GroupDescriptor::Cyclic(3), 2, 2, 2),
    ];
    for (s, g, n, l, p) in cases {
        let (_, rep) = ok(endo_graded_construction(s.clone(), g.clone(), n, l))?;
        ensure(rep.passed() && rep.p == p && rep.size == n * l, || format!("({g}, {n}, {l}) over {s}: {rep:?}"))?;
    }
    Ok("(C2, 2, 1) over Z/5 and Z, (C3, 2, 2) over Z: closure, strong grading, M_nl(S) and T_1 blocks".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("Leavitt rank certificates", leavitt_certificates),
        ("matrix-unit towers", matrix_unit_towers),
        ("certificate compression", compression),
        ("rank collapse on F2", rank_collapse),
        ("Folner dichotomy", folner_dichotomy),
        ("matching dichotomy", matching_dichotomy),
        ("skew group ring isomorphism", skew_isomorphism),
        ("monoid generating numbers", monoid_generating_numbers),
        ("M(n,k,l) separators", separators),
        ("BS(1,k) witnesses", bs_witnesses),
        ("Weyl corpora", weyl_corpora),
        ("certificate algebra", certificate_algebra),
        ("graded endomorphism rings", endo_grading),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

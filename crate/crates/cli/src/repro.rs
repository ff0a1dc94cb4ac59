//! Named constructions re-run with their standard parameters. Each prints
//! one line per check; the verdict is the conjunction.

use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use ugnkit::algebras::leavitt::LeavittAlgebra;
use ugnkit::algebras::weyl::{WeylAlgebra, WeylElem};
use ugnkit::amenability::{
    bs_example_check, find_two_to_one_injection, folner_search, rosenblatt_find, FolnerOutcome, FolnerStrategy,
    InjectionOutcome, SubsetPredicate,
};
use ugnkit::graded::endo_graded_construction;
use ugnkit::groups::{FiniteSet, GroupDescriptor, GroupElement, KAdic};
use ugnkit::monoids::{Cnk, LeqVerdict, Mnkl, DEFAULT_CLOSURE_DEPTH};
use ugnkit::rings::{CertificateStatus, Elem, RankCertificate, Ring, RingHom, RingMatrix};
use ugnkit::translation::{
    collapse_matrices, compress_certificate, finite_group_iso, CoeffFn, TranslationCertificate, TranslationElement,
    DEFAULT_ISO_ORDER_BOUND,
};

use crate::report::{check_line, Report, Verdict};

#[derive(Clone, Copy, ValueEnum)]
pub enum Construction {
    /// `(1, n)` certificate over L(1,n) and its matrix units.
    LeavittCertificate,
    /// Matrix-unit towers in L(1,n) at level l.
    MatrixUnits,
    /// Compression of a translation-ring certificate over Z.
    Compression,
    /// Two-to-one injection on F2 and the collapse identities.
    RankCollapse,
    /// Følner sets in Z and Z^2, none in F2.
    Folner,
    /// Hall violations in Z, injections in F2.
    Matching,
    /// Skew group rings of finite groups as matrix rings.
    SkewIso,
    /// Generating numbers of C(n,k).
    MonoidGn,
    /// Separators refuting lambda x_j <= mu x_j in M(n,k,l).
    Separators,
    /// The X, X0 subsets of BS(1,k) and random coset counts.
    BsExample,
    /// Weyl algebra products, coordinates and the degree-zero map.
    Weyl,
    /// Extend, opposite, block, product and pushforward of certificates.
    CertificateAlgebra,
    /// Graded matrix rings over finite cyclic groups.
    EndoGraded,
}

#[derive(Args)]
pub struct ReproArgs {
    #[arg(value_enum)]
    name: Construction,
    /// Leavitt parameter n.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Matrix-unit level l.
    #[arg(long, default_value_t = 2)]
    l: usize,
}

struct Checks {
    lines: Vec<String>,
    ok: bool,
}

impl Checks {
    fn new() -> Checks {
        Checks { lines: Vec::new(), ok: true }
    }

    fn check(&mut self, name: impl AsRef<str>, ok: bool) {
        self.lines.push(check_line(name.as_ref(), ok));
        self.ok &= ok;
    }

    fn note(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }
}

pub fn run(a: &ReproArgs, seed: u64) -> Result<Report> {
    let mut c = Checks::new();
    match a.name {
        Construction::LeavittCertificate => leavitt_certificate(&mut c, a.n)?,
        Construction::MatrixUnits => matrix_units(&mut c, a.n, a.l)?,
        Construction::Compression => compression(&mut c)?,
        Construction::RankCollapse => rank_collapse(&mut c)?,
        Construction::Folner => folner(&mut c)?,
        Construction::Matching => matching(&mut c)?,
        Construction::SkewIso => skew_iso(&mut c)?,
        Construction::MonoidGn => monoid_gn(&mut c)?,
        Construction::Separators => separators(&mut c)?,
        Construction::BsExample => bs_example(&mut c, seed)?,
        Construction::Weyl => weyl(&mut c, seed)?,
        Construction::CertificateAlgebra => certificate_algebra(&mut c)?,
        Construction::EndoGraded => endo_graded(&mut c)?,
    }
    let name = a.name.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut rep = Report::new(Verdict::from_bool(c.ok), json!({"construction": name, "checks": c.lines}));
    rep.lines = c.lines;
    Ok(rep)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn leavitt(n: usize) -> Result<Arc<LeavittAlgebra>> {
    Ok(Arc::new(LeavittAlgebra::new(n, Ring::Integers)?))
}

fn unit_ball(g: &GroupDescriptor) -> Result<FiniteSet> {
    Ok(g.ball(1)?.into_iter().collect())
}

fn leavitt_certificate(c: &mut Checks, n: usize) -> Result<()> {
    let alg = leavitt(n)?;
    let cert = alg.rank_certificate();
    c.note(format!("L(1,{n}): A = (e1*, ..., e{n}*)ᵗ, B = (e1, ..., e{n})"));
    c.check("AB = I_n", cert.a().mul(cert.b())?.is_identity());
    c.check("BA = 1", cert.b().mul(cert.a())?.is_identity());
    c.check(format!("status {}", cert.verify()), cert.verify() == CertificateStatus::ValidBGN);
    for l in 1..=2 {
        let rep = alg.matrix_units(l, None)?;
        c.check(format!("level {l} matrix units ({} product-law instances)", rep.product_law_checked), rep.passed());
    }
    Ok(())
}

fn matrix_units(c: &mut Checks, n: usize, l: usize) -> Result<()> {
    let rep = leavitt(n)?.matrix_units(l, None)?;
    c.note(format!("L(1,{n}), level {l}: {} units per side", rep.size));
    c.check(format!("product law on {} quadruples", rep.product_law_checked), rep.product_law_failures.is_empty());
    c.check("units sum to 1", rep.sum_is_one);
    c.check("units have degree 0", rep.all_degree_zero);
    c.check("tower refinement", rep.tower_ok);
    Ok(())
}

fn compression(c: &mut Checks) -> Result<()> {
    let z = GroupDescriptor::FreeAbelian(1);
    let x = SubsetPredicate::whole(z.clone());
    let ring: Ring = "L(1,2)".parse()?;
    let diag = |s: &str| -> Result<TranslationElement> {
        Ok(TranslationElement::diagonal(x.clone(), ring.clone(), CoeffFn::constant(ring.parse_elem(s)?)))
    };
    let cert = TranslationCertificate::new(
        x.clone(),
        ring.clone(),
        1,
        2,
        vec![diag("e1'")?, diag("e2'")?],
        vec![diag("e1")?, diag("e2")?],
    )?;
    let set = |r: std::ops::RangeInclusive<i64>| -> FiniteSet { r.map(|n| z.int(n)).collect() };
    for f in [0..=0, 0..=1] {
        let fs = set(f);
        let rep = compress_certificate(&cert, &fs, Some(&set(0..=0)))?;
        let cc = &rep.certificate;
        let ok = rep.status == CertificateStatus::ValidBGN && cc.a().mul(cc.b())?.is_identity();
        c.check(format!("F = {}: {}x{} compressed, A*B* = I", z.format_set(&fs), cc.m(), cc.n()), ok);
    }
    let padded = compress_certificate(&cert, &set(0..=1), Some(&set(-1..=1)));
    c.check("K = {-1, 0, 1} refused by the Følner inequality", matches!(padded, Err(ugnkit::Error::Precondition(_))));
    Ok(())
}

fn rank_collapse(c: &mut Checks) -> Result<()> {
    let g = GroupDescriptor::Free(2);
    let k = unit_ball(&g)?;
    let (v, w) = (g.ball(2)?, g.ball(3)?);
    let out = find_two_to_one_injection(&g, &v, &w, &k)?;
    let wit = out.witness().context("no injection B2 -> B3 in F2")?;
    c.check(format!("injection B2 -> B3 ({} -> {})", v.len(), w.len()), wit.verify(&g));
    let rep = collapse_matrices(wit, &Ring::Integers)?;
    for ch in &rep.checks {
        c.check(ch.name, ch.holds);
    }
    Ok(())
}

fn folner(c: &mut Checks) -> Result<()> {
    let eps = [q(1, 1), q(1, 2), q(1, 10)];
    for g in [GroupDescriptor::FreeAbelian(1), GroupDescriptor::FreeAbelian(2)] {
        let x = SubsetPredicate::whole(g.clone());
        let k = unit_ball(&g)?;
        for e in &eps {
            let ok = match folner_search(&x, &k, e, &FolnerStrategy::Balls { r_max: 25 })? {
                FolnerOutcome::Found { witness, index, .. } => {
                    c.note(format!("{g}, eps = {e}: ball of radius {index}, counts {:?}", witness.counts));
                    witness.verify(&x)?
                }
                FolnerOutcome::NotFound { .. } => false,
            };
            c.check(format!("{g}, eps = {e}: witness verified"), ok);
        }
    }
    let f2 = GroupDescriptor::Free(2);
    let x = SubsetPredicate::whole(f2.clone());
    let k = unit_ball(&f2)?;
    for e in &eps {
        let ok = match folner_search(&x, &k, e, &FolnerStrategy::Balls { r_max: 6 })? {
            FolnerOutcome::NotFound { tried, best_ratio } => {
                c.note(format!("F2, eps = {e}: best ratio {} over r = 0..6", best_ratio.unwrap_or_default()));
                tried.len() == 7 && tried.iter().all(|t| t.ratio.as_ref().is_some_and(|r| *r > q(2, 1)))
            }
            FolnerOutcome::Found { .. } => false,
        };
        c.check(format!("F2, eps = {e}: no Følner ball, all ratios > 2"), ok);
    }
    Ok(())
}

fn matching(c: &mut Checks) -> Result<()> {
    let z = GroupDescriptor::FreeAbelian(1);
    let k: FiniteSet = (-1..=1).map(|n| z.int(n)).collect();
    let mut all = true;
    for l in 2..=40 {
        let v: Vec<GroupElement> = (0..=l).map(|n| z.int(n)).collect();
        let w: Vec<GroupElement> = z.set_product(&k, &v.iter().cloned().collect())?.into_iter().collect();
        all &= match find_two_to_one_injection(&z, &v, &w, &k)? {
            InjectionOutcome::Infeasible { violation, .. } => violation.verify(&z, &v, &w, &k),
            InjectionOutcome::Found(_) => false,
        };
    }
    c.check("Z, V = [0, L], L = 2..40: infeasible with verified Hall sets", all);
    let f2 = GroupDescriptor::Free(2);
    let k = unit_ball(&f2)?;
    for r in 0..=4 {
        let (v, w) = (f2.ball(r)?, f2.ball(r + 1)?);
        let out = find_two_to_one_injection(&f2, &v, &w, &k)?;
        c.check(format!("F2, B{r} -> B{}: injection verified", r + 1), out.witness().is_some_and(|w| w.verify(&f2)));
    }
    Ok(())
}

fn skew_iso(c: &mut Checks) -> Result<()> {
    let mut groups: Vec<GroupDescriptor> = (1..=8).map(GroupDescriptor::Cyclic).collect();
    for fs in [vec![2, 2], vec![2, 3], vec![2, 4], vec![2, 2, 2]] {
        groups.push(GroupDescriptor::DirectProduct(fs.into_iter().map(GroupDescriptor::Cyclic).collect()));
    }
    for r in [Ring::Integers, Ring::integers_mod(5)?] {
        for g in &groups {
            let rep = finite_group_iso(g, &r, DEFAULT_ISO_ORDER_BOUND)?;
            c.check(format!("{g} over {r} ({} generator pairs)", rep.pairs_checked), rep.passed());
        }
    }
    Ok(())
}

fn monoid_gn(c: &mut Checks) -> Result<()> {
    let mut all = true;
    for n in 1..=20 {
        for k in 1..=20 {
            let m = Cnk::new(n, k)?;
            // (n+1)a and na are the last distinct multiples above the cycle start
            all &= m.generating_number() == n && m.leq(n + 1, n) && (n == 1 || !m.leq(n, n - 1));
        }
    }
    c.check("gn(C(n,k)) = n for n, k <= 20", all);
    Ok(())
}

fn separators(c: &mut Checks) -> Result<()> {
    let mut refuted = 0;
    let mut all = true;
    for n in 1..=5 {
        for k in 1..=5 {
            for l in 1..=3 {
                let m = Mnkl::new(n, k, l)?;
                for j in 1..=l {
                    let xj = m.x(j)?;
                    for mu in 0..=6 {
                        for lam in mu + 1..=12 {
                            let (s, t) = (xj.scale(lam), xj.scale(mu));
                            all &= match m.leq(&s, &t, DEFAULT_CLOSURE_DEPTH)? {
                                LeqVerdict::No(sep) => m.separator_holds(&sep, &s, &t)?,
                                _ => false,
                            };
                            refuted += 1;
                        }
                    }
                }
            }
        }
    }
    c.check(format!("{refuted} inequalities lambda x_j <= mu x_j (lambda > mu) refuted with verified separators"), all);
    Ok(())
}

fn bs_example(c: &mut Checks, seed: u64) -> Result<()> {
    for k in [2, 3] {
        for r in 0..=5 {
            let rep = bs_example_check(k, r)?;
            c.check(format!("BS(1,{k}), radius {r} ({} elements)", rep.ball_size), rep.passed());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = true;
    for i in 0..50 {
        let k: u32 = if i % 2 == 0 { 2 } else { 3 };
        let mut elem = || GroupElement::BaumslagSolitar {
            t: KAdic::new(BigInt::from(rng.gen_range(-30..=30)), rng.gen_range(0..=3), k),
            m: rng.gen_range(-3..=3),
        };
        let nv = 1 + (i % 6);
        let u: Vec<GroupElement> = (0..nv - 1).map(|_| elem()).collect();
        let v: Vec<GroupElement> = (0..nv).map(|_| elem()).collect();
        let w = rosenblatt_find(k, &u, &v)?;
        all &= w.verify(k, &u, &v);
    }
    c.check(format!("50 random pairs |u| < |v| separated by a translate of X (seed {seed})"), all);
    Ok(())
}

fn random_weyl(rng: &mut ChaCha8Rng, alg: &WeylAlgebra, len: usize) -> WeylElem {
    let n = alg.n() as u8;
    let mut acc = alg.scalar(Elem::int(rng.gen_range(-3..=3)));
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = alg.scalar(Elem::int(rng.gen_range(-3..=3)));
        for _ in 0..rng.gen_range(0..=len) {
            let i = rng.gen_range(0..=n);
            term = alg.mul(&term, &if i == 0 { alg.y() } else { alg.x(i) });
        }
        acc = alg.add(&acc, &term);
    }
    acc
}

fn weyl(c: &mut Checks, seed: u64) -> Result<()> {
    let algebras = [
        WeylAlgebra::classical(1)?,
        WeylAlgebra::new(Ring::Integers, vec![Elem::int(-1)], vec![Elem::int(3)])?,
        WeylAlgebra::new(Ring::Integers, vec![Elem::int(1), Elem::int(-1)], vec![Elem::int(1), Elem::int(2)])?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for alg in &algebras {
        let (mut assoc, mut fixed, mut phi, mut coords) = (true, true, true, true);
        for _ in 0..60 {
            let (u, v, w) = (random_weyl(&mut rng, alg, 5), random_weyl(&mut rng, alg, 5), random_weyl(&mut rng, alg, 5));
            assoc &= alg.mul(&alg.mul(&u, &v), &w) == alg.mul(&u, &alg.mul(&v, &w));
            let uv = alg.mul(&u, &v);
            fixed &= alg.parse(&alg.format(&uv))? == uv;
            let (p, s) = (alg.component(&u, 0), alg.component(&v, 0));
            phi &= alg.phi0(&alg.mul(&p, &s))? == alg.base().mul(&alg.phi0(&p)?, &alg.phi0(&s)?);
            for d in alg.degrees(&uv) {
                let part = alg.component(&uv, d);
                let back = alg
                    .basis_elements(d)
                    .iter()
                    .zip(&alg.right_coordinates(&part, d)?)
                    .fold(alg.scalar(Elem::int(0)), |acc, (b, c)| alg.add(&acc, &alg.mul(b, c)));
                coords &= back == part;
            }
        }
        c.note(format!("{alg}:"));
        c.check("  associativity on 60 triples", assoc);
        c.check("  normal forms are parse fixed points", fixed);
        c.check("  degree-zero map is multiplicative", phi);
        c.check("  components rebuilt from right coordinates", coords);
    }
    Ok(())
}

/// The `(1, 2)` certificate `((e1*, e2*)ᵗ, (e1, e2))` over `L(1,n)`.
fn step(n: usize) -> Result<RankCertificate> {
    let r: Ring = format!("L(1,{n})").parse()?;
    let a = RingMatrix::new(r.clone(), 2, 1, vec![r.parse_elem("e1'")?, r.parse_elem("e2'")?])?;
    let b = RingMatrix::new(r.clone(), 1, 2, vec![r.parse_elem("e1")?, r.parse_elem("e2")?])?;
    Ok(RankCertificate::new(r, 1, 2, a, b)?)
}

fn certificate_algebra(c: &mut Checks) -> Result<()> {
    let bgn = |x: &RankCertificate| x.verify() == CertificateStatus::ValidBGN;
    for n in 2..=4 {
        let s = step(n)?;
        let ok = (2..=6).map(|t| s.extend(t)).collect::<ugnkit::Result<Vec<_>>>()?.iter().all(bgn);
        c.check(format!("L(1,{n}): (1,2) extended to (1,t), t = 2..6"), ok);
        let cert = leavitt(n)?.rank_certificate();
        let o = cert.opposite()?;
        c.check(format!("L(1,{n}): opposite is valid and an involution"), bgn(&o) && o.opposite()? == cert);
    }
    let cert = leavitt(2)?.rank_certificate();
    let r = cert.ring().clone();
    let c24 = RankCertificate::new(
        r.clone(),
        2,
        4,
        RingMatrix::block_diagonal(r.clone(), &[cert.a(), cert.a()]),
        RingMatrix::block_diagonal(r.clone(), &[cert.b(), cert.b()]),
    )?;
    let up = c24.block_up(2)?;
    c.check("(2,4) over L(1,2) to (1,2) over M_2(L(1,2))", bgn(&up));
    c.check("block down recovers the original", up.block_down()? == c24);
    let p = RankCertificate::product(&[cert.clone(), step(3)?])?;
    c.check("product over L(1,2) x L(1,3)", bgn(&p));
    for i in 0..2 {
        c.check(format!("projection {i} of the product"), bgn(&p.map_hom(&RingHom::projection(p.ring(), i)?)?));
    }
    let zg: Ring = "Z[C(2)]".parse()?;
    let g = zg.parse_elem("{1: 1}")?;
    let gc = RankCertificate::new(
        zg.clone(),
        1,
        1,
        RingMatrix::new(zg.clone(), 1, 1, vec![g.clone()])?,
        RingMatrix::new(zg.clone(), 1, 1, vec![g])?,
    )?;
    let pushed = gc.map_hom(&RingHom::augmentation(&zg)?)?;
    c.check("augmentation Z[C(2)] -> Z", pushed.verify().is_valid() && *pushed.ring() == Ring::Integers);
    Ok(())
}

fn endo_graded(c: &mut Checks) -> Result<()> {
    let cases = [
        (Ring::integers_mod(5)?, GroupDescriptor::Cyclic(2), 2, 1),
        (Ring::Integers, GroupDescriptor::Cyclic(2), 2, 1),
        (Ring::Integers, GroupDescriptor::Cyclic(3), 2, 2),
    ];
    for (s, g, n, l) in cases {
        let (_, rep) = endo_graded_construction(s.clone(), g.clone(), n, l)?;
        c.check(
            format!("S = {s}, G = {g}, n = {n}, l = {l}: p = {}, dims {:?}", rep.p, rep.component_dims),
            rep.passed(),
        );
    }
    Ok(())
}

//! Independent oracles and fixed-seed corpora shared by the integration
//! tests and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ugnkit::algebras::leavitt::{LeavittAlgebra, LeavittElem};
use ugnkit::algebras::weyl::{WeylAlgebra, WeylElem};
use ugnkit::rings::Elem;

pub const CORPUS_SEED: u64 = 0x0057_4559_4c00;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    r.set_stream(stream);
    r
}

fn int(x: &Elem) -> BigInt {
    match x {
        Elem::Int(v) => v.clone(),
        other => panic!("oracle works over Z, got {other:?}"),
    }
}

/// Finitely supported vector in `⊕_{k≥0} Z δ_k`.
pub type Vector = BTreeMap<u64, BigInt>;

/// `e_i δ_k = δ_{nk+i-1}` and `e_i* δ_m = δ_k` when `m = nk+i-1`, zero
/// otherwise. These satisfy `e_i* e_j = δ_ij` and `Σ e_i e_i* = 1`.
pub fn leavitt_letter(n: u64, i: u8, star: bool, v: &Vector) -> Vector {
    let i = i as u64;
    let mut out = Vector::new();
    for (&k, c) in v {
        if star {
            if k % n == i - 1 {
                out.insert(k / n, c.clone());
            }
        } else {
            out.insert(n * k + i - 1, c.clone());
        }
    }
    out
}

fn add_into(acc: &mut Vector, v: Vector, c: &BigInt) {
    for (k, x) in v {
        let e = acc.entry(k).or_insert_with(BigInt::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

/// Operator of a normal-form element: `c α β*` acts by `β*` then `α`.
pub fn leavitt_apply(alg: &LeavittAlgebra, x: &LeavittElem, v: &Vector) -> Vector {
    let n = alg.n() as u64;
    let mut out = Vector::new();
    for ((alpha, beta), c) in x.terms() {
        let mut w = v.clone();
        for &b in beta {
            w = leavitt_letter(n, b, true, &w);
        }
        for &a in alpha.iter().rev() {
            w = leavitt_letter(n, a, false, &w);
        }
        add_into(&mut out, w, &int(c));
    }
    out
}

/// Letter of a Leavitt word: `(i, starred)`.
pub type LLetter = (u8, bool);

pub fn random_leavitt_word(r: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<LLetter> {
    let len = r.gen_range(0..=max_len);
    (0..len).map(|_| (r.gen_range(1..=n as u8), r.gen_bool(0.5))).collect()
}

pub fn leavitt_eval(alg: &LeavittAlgebra, w: &[LLetter]) -> LeavittElem {
    w.iter().fold(alg.scalar(alg.base().one()), |acc, &(i, s)| {
        alg.mul(&acc, &if s { alg.e_star(i) } else { alg.e(i) })
    })
}

/// The word applied as a composition of letters (rightmost first).
pub fn leavitt_word_apply(n: u64, w: &[LLetter], v: &Vector) -> Vector {
    w.iter().rev().fold(v.clone(), |acc, &(i, s)| leavitt_letter(n, i, s, &acc))
}

pub fn delta(k: u64) -> Vector {
    [(k, BigInt::one())].into_iter().collect()
}

/// Weyl letters: `Some(i)` is `x_i`, `None` is `y`.
pub type WLetter = Option<u8>;

/// Normal form by repeatedly rewriting the leftmost `y x_i` into
/// `a_i x_i y + b_i`, over `Z` with integer parameters.
pub fn weyl_naive_normal(a: &[i64], b: &[i64], words: BTreeMap<Vec<WLetter>, BigInt>) -> BTreeMap<(Vec<u8>, u32), BigInt> {
    let mut todo: Vec<(Vec<WLetter>, BigInt)> = words.into_iter().collect();
    let mut out: BTreeMap<(Vec<u8>, u32), BigInt> = BTreeMap::new();
    while let Some((w, c)) = todo.pop() {
        if c.is_zero() {
            continue;
        }
        match (0..w.len().saturating_sub(1)).find(|&p| w[p].is_none() && w[p + 1].is_some()) {
            Some(p) => {
                let i = w[p + 1].unwrap();
                let idx = (i - 1) as usize;
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                todo.push((swapped, &c * a[idx]));
                let mut dropped = w[..p].to_vec();
                dropped.extend_from_slice(&w[p + 2..]);
                todo.push((dropped, &c * b[idx]));
            }
            None => {
                let xs: Vec<u8> = w.iter().filter_map(|l| *l).collect();
                let ys = w.iter().filter(|l| l.is_none()).count() as u32;
                let e = out.entry((xs, ys)).or_insert_with(BigInt::zero);
                *e += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn weyl_terms(x: &WeylElem) -> BTreeMap<(Vec<u8>, u32), BigInt> {
    x.terms().map(|(k, c)| (k.clone(), int(c))).collect()
}

pub fn random_weyl_word(r: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<WLetter> {
    let len = r.gen_range(0..=max_len);
    (0..len).map(|_| if r.gen_range(0..=n) == 0 { None } else { Some(r.gen_range(1..=n as u8)) }).collect()
}

pub fn weyl_eval(alg: &WeylAlgebra, w: &[WLetter]) -> WeylElem {
    w.iter().fold(alg.scalar(alg.base().one()), |acc, l| {
        alg.mul(&acc, &match l {
            Some(i) => alg.x(*i),
            None => alg.y(),
        })
    })
}

/// Random degree-0 element: small integer combination of `x_w y^{|w|}`
/// with `|w| ≤ 2`, plus a constant.
pub fn random_degree_zero(r: &mut ChaCha8Rng, alg: &WeylAlgebra) -> WeylElem {
    let mut out = alg.scalar(Elem::int(r.gen_range(-3..=3)));
    for _ in 0..r.gen_range(0..=3) {
        let len = r.gen_range(1..=2);
        let w: Vec<u8> = (0..len).map(|_| r.gen_range(1..=alg.n() as u8)).collect();
        let c = alg.scalar(Elem::int(r.gen_range(-3..=3)));
        out = alg.add(&out, &alg.mul(&c, &alg.monomial(&w, len as u32)));
    }
    out
}

/// `C(n,k)` as `N` modulo the congruence generated by `n ~ n+k`, closed by
/// union-find over `0..=limit`, and its order by searching `ν`.
pub struct CnkOracle {
    limit: u64,
    parent: Vec<usize>,
}

impl CnkOracle {
    pub fn new(n: u64, k: u64, limit: u64) -> CnkOracle {
        let mut parent: Vec<usize> = (0..=limit as usize).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        // λ ~ λ + k for every λ ≥ n (translates of the relation)
        for lam in n..=limit.saturating_sub(k) {
            let (a, b) = (find(&mut parent, lam as usize), find(&mut parent, (lam + k) as usize));
            parent[a] = b;
        }
        let mut o = CnkOracle { limit, parent };
        for x in 0..=limit as usize {
            o.parent[x] = find(&mut o.parent, x);
        }
        o
    }

    pub fn same(&self, a: u64, b: u64) -> bool {
        self.parent[a as usize] == self.parent[b as usize]
    }

    /// `λa ≤ μa`: some `ν` with `λ + ν ~ μ`.
    pub fn leq(&self, lambda: u64, mu: u64) -> bool {
        (0..=self.limit - lambda).any(|nu| self.same(lambda + nu, mu))
    }

    /// `table[λ][μ] = leq(λ, μ)` for `λ, μ ≤ bound`, from suffix unions of
    /// the classes met by `λ + ν`.
    pub fn leq_table(&self, bound: u64) -> Vec<Vec<bool>> {
        let size = self.limit as usize + 1;
        let mut reach = vec![false; size];
        let mut rows = vec![Vec::new(); bound as usize + 1];
        for lam in (0..size).rev() {
            reach[self.parent[lam]] = true;
            if lam <= bound as usize {
                rows[lam] = (0..=bound as usize).map(|mu| reach[self.parent[mu]]).collect();
            }
        }
        rows
    }
}

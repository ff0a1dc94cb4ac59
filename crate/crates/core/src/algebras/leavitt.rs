//! The Leavitt algebra `L(1,n)` over a scalar ring `S`: generators
//! `e_1..e_n, e_1*..e_n*` with `e_i* e_j = δ_ij` and `Σ e_i e_i* = 1`.
//!
//! Elements are `S`-combinations of monomials `α β*` for words `α, β`,
//! never with both `α` and `β` ending in `e_n`; the relation
//! `e_n e_n* = 1 - Σ_{i<n} e_i e_i*` removes such pairs. This gives a
//! unique normal form.

use std::collections::BTreeMap;
use std::fmt;

use super::expr::{evaluate, parse_expr};
use crate::error::{parse_err, Error, Result};
use crate::rings::{Elem, RankCertificate, Ring, RingMatrix};

/// Monomial `α β*`, letters `1..=n`.
pub type LeavittMonomial = (Vec<u8>, Vec<u8>);

/// Largest number of matrix units built by [`LeavittAlgebra::matrix_units`].
pub const MATRIX_UNIT_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeavittAlgebra {
    n: usize,
    base: Ring,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeavittElem {
    terms: BTreeMap<LeavittMonomial, Elem>,
}

impl LeavittElem {
    pub fn terms(&self) -> impl Iterator<Item = (&LeavittMonomial, &Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn word_degree(m: &LeavittMonomial) -> i64 {
    m.0.len() as i64 - m.1.len() as i64
}

impl LeavittAlgebra {
    pub fn new(n: usize, base: Ring) -> Result<LeavittAlgebra> {
        if n < 2 || n > 255 {
            return Err(Error::InvalidArgument(format!("L(1,n) needs 2 <= n <= 255, got {n}")));
        }
        if !base.is_scalar() {
            return Err(Error::Unsupported(format!("Leavitt coefficients must lie in Z, Z/m or Q, not {base}")));
        }
        Ok(LeavittAlgebra { n, base })
    }

    /// `L(1,n)` over the integers, wrapped as a [`Ring`].
    pub fn ring(n: usize) -> Result<Ring> {
        Ok(Ring::Leavitt(LeavittAlgebra::new(n, Ring::Integers)?.into()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn contains(&self, x: &LeavittElem) -> bool {
        x.terms.iter().all(|((a, b), c)| {
            let letters_ok = a.iter().chain(b).all(|&l| l >= 1 && l as usize <= self.n);
            let n = self.n as u8;
            let reduced = !(a.last() == Some(&n) && b.last() == Some(&n));
            letters_ok && reduced && self.base.contains(c) && !self.base.is_zero(c)
        })
    }

    pub fn scalar(&self, c: Elem) -> LeavittElem {
        let mut out = LeavittElem::default();
        self.push(&mut out, (Vec::new(), Vec::new()), c);
        out
    }

    pub fn monomial(&self, alpha: &[u8], beta: &[u8]) -> LeavittElem {
        let mut out = LeavittElem::default();
        self.push_reduced(&mut out, alpha.to_vec(), beta.to_vec(), self.base.one());
        out
    }

    /// `e_i` (1-based).
    pub fn e(&self, i: u8) -> LeavittElem {
        self.monomial(&[i], &[])
    }

    /// `e_i*` (1-based).
    pub fn e_star(&self, i: u8) -> LeavittElem {
        self.monomial(&[], &[i])
    }

    pub fn constant_term(&self, x: &LeavittElem) -> Elem {
        x.terms.get(&(Vec::new(), Vec::new())).cloned().unwrap_or_else(|| self.base.zero())
    }

    fn push(&self, out: &mut LeavittElem, key: LeavittMonomial, c: Elem) {
        if self.base.is_zero(&c) {
            return;
        }
        match out.terms.get_mut(&key) {
            Some(v) => {
                let s = self.base.add(v, &c);
                if self.base.is_zero(&s) {
                    out.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                out.terms.insert(key, c);
            }
        }
    }

    /// Adds `c·α β*`, rewriting `α0 e_n (β0 e_n)*` into
    /// `α0 β0* - Σ_{i<n} α0 e_i (β0 e_i)*` until reduced.
    fn push_reduced(&self, out: &mut LeavittElem, mut alpha: Vec<u8>, mut beta: Vec<u8>, c: Elem) {
        let n = self.n as u8;
        let neg = self.base.neg(&c);
        while alpha.last() == Some(&n) && beta.last() == Some(&n) {
            alpha.pop();
            beta.pop();
            for i in 1..n {
                let mut a = alpha.clone();
                a.push(i);
                let mut b = beta.clone();
                b.push(i);
                self.push(out, (a, b), neg.clone());
            }
        }
        self.push(out, (alpha, beta), c);
    }

    pub fn add(&self, x: &LeavittElem, y: &LeavittElem) -> LeavittElem {
        let mut out = x.clone();
        for (k, c) in &y.terms {
            self.push(&mut out, k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, x: &LeavittElem) -> LeavittElem {
        LeavittElem { terms: x.terms.iter().map(|(k, c)| (k.clone(), self.base.neg(c))).collect() }
    }

    pub fn scale(&self, c: &Elem, x: &LeavittElem) -> LeavittElem {
        let mut out = LeavittElem::default();
        for (k, v) in &x.terms {
            self.push(&mut out, k.clone(), self.base.mul(c, v));
        }
        out
    }

    pub fn mul(&self, x: &LeavittElem, y: &LeavittElem) -> LeavittElem {
        let mut out = LeavittElem::default();
        for ((a, b), c) in &x.terms {
            for ((g, d), c2) in &y.terms {
                // β* γ is γ' when γ = β γ', β'* when β = γ β', and 0 otherwise
                let (alpha, beta) = if g.starts_with(b) {
                    let mut alpha = a.clone();
                    alpha.extend_from_slice(&g[b.len()..]);
                    (alpha, d.clone())
                } else if b.starts_with(g) {
                    let mut beta = d.clone();
                    beta.extend_from_slice(&b[g.len()..]);
                    (a.clone(), beta)
                } else {
                    continue;
                };
                self.push_reduced(&mut out, alpha, beta, self.base.mul(c, c2));
            }
        }
        out
    }

    /// The involution `(c α β*)* = c β α*`.
    pub fn star(&self, x: &LeavittElem) -> LeavittElem {
        LeavittElem { terms: x.terms.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())).collect() }
    }

    /// Degrees `l(α) - l(β)` occurring in `x`, ascending.
    pub fn degrees(&self, x: &LeavittElem) -> Vec<i64> {
        let mut d: Vec<i64> = x.terms.keys().map(word_degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(d)` when every term of `x` has degree `d` (zero is homogeneous
    /// of every degree and reports `Some(0)`).
    pub fn homogeneous_degree(&self, x: &LeavittElem) -> Option<i64> {
        match self.degrees(x).as_slice() {
            [] => Some(0),
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Degree-`d` part of `x`.
    pub fn component(&self, x: &LeavittElem, d: i64) -> LeavittElem {
        LeavittElem { terms: x.terms.iter().filter(|(k, _)| word_degree(k) == d).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn parse(&self, s: &str) -> Result<LeavittElem> {
        let ring = Ring::Leavitt(self.clone().into());
        let expr = parse_expr(s)?;
        let gen = |name: &str, starred: bool| -> Result<Elem> {
            let i = name
                .strip_prefix('e')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= self.n)
                .ok_or_else(|| parse_err(format!("unknown generator `{name}` for L(1,{})", self.n)))?;
            Ok(Elem::Leavitt(if starred { self.e_star(i as u8) } else { self.e(i as u8) }))
        };
        let star = |x: &Elem| match x {
            Elem::Leavitt(e) => Elem::Leavitt(self.star(e)),
            other => other.clone(),
        };
        match evaluate(&ring, &expr, &gen, Some(&star))? {
            Elem::Leavitt(e) => Ok(e),
            _ => unreachable!("Leavitt evaluation yields Leavitt elements"),
        }
    }

    pub fn format(&self, x: &LeavittElem) -> String {
        let terms = x.terms.iter().map(|((a, b), c)| {
            let mut word: Vec<String> = a.iter().map(|l| format!("e{l}")).collect();
            word.extend(b.iter().rev().map(|l| format!("e{l}'")));
            (word.join(" "), c)
        });
        super::format_terms(&self.base, terms)
    }

    /// `A = (e_1*, ..., e_n*)ᵗ` and `B = (e_1, ..., e_n)`: a certificate
    /// for `L^1 → L^n`.
    pub fn rank_certificate(self: &std::sync::Arc<Self>) -> RankCertificate {
        let ring = Ring::Leavitt(self.clone());
        let n = self.n;
        let a = RingMatrix::from_fn(ring.clone(), n, 1, |i, _| Elem::Leavitt(self.e_star(i as u8 + 1)));
        let b = RingMatrix::from_fn(ring.clone(), 1, n, |_, j| Elem::Leavitt(self.e(j as u8 + 1)));
        RankCertificate::new(ring, 1, n, a, b).expect("shapes are consistent")
    }

    /// All words of length `l` in lexicographic order.
    pub fn words(&self, l: usize) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..l {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (1..=self.n as u8).map(move |i| {
                        let mut v = w.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Matrix units `ε_ij = σ(i) σ(j)*` for an ordering `sigma` of the words
    /// of length `l` (lexicographic when `None`), with every defining
    /// identity checked by rewriting.
    pub fn matrix_units(&self, l: usize, sigma: Option<Vec<Vec<u8>>>) -> Result<MatrixUnitReport> {
        if l == 0 {
            return Err(Error::InvalidArgument("matrix units need l >= 1".into()));
        }
        let size = (self.n as u128).checked_pow(l as u32).filter(|&s| s <= MATRIX_UNIT_BOUND as u128);
        let size = size.ok_or_else(|| Error::BoundExceeded(format!("n^l exceeds {MATRIX_UNIT_BOUND}")))? as usize;
        let words = match sigma {
            None => self.words(l),
            Some(ws) => {
                let mut sorted = ws.clone();
                sorted.sort();
                if sorted != self.words(l) {
                    return Err(Error::InvalidArgument(format!("sigma must list each word of length {l} exactly once")));
                }
                ws
            }
        };
        let eps: Vec<Vec<LeavittElem>> =
            words.iter().map(|wi| words.iter().map(|wj| self.monomial(wi, wj)).collect()).collect();
        let zero = LeavittElem::default();
        let mut product_law_checked = 0usize;
        let mut product_law_failures = Vec::new();
        for i in 0..size {
            for j in 0..size {
                for k in 0..size {
                    for m in 0..size {
                        let lhs = self.mul(&eps[i][j], &eps[k][m]);
                        let rhs = if j == k { &eps[i][m] } else { &zero };
                        product_law_checked += 1;
                        if lhs != *rhs {
                            product_law_failures.push((i + 1, j + 1, k + 1, m + 1));
                        }
                    }
                }
            }
        }
        let diag_sum = (0..size).fold(LeavittElem::default(), |acc, i| self.add(&acc, &eps[i][i]));
        let sum_is_one = diag_sum == self.scalar(self.base.one());
        let all_degree_zero = eps.iter().flatten().all(|e| self.homogeneous_degree(e) == Some(0));
        // ε_ij of level l expands into level l+1 units via relation Σ e_i e_i* = 1
        let mut tower_ok = true;
        for (i, wi) in words.iter().enumerate() {
            for (j, wj) in words.iter().enumerate() {
                let mut expanded = LeavittElem::default();
                for t in 1..=self.n as u8 {
                    let (mut a, mut b) = (wi.clone(), wj.clone());
                    a.push(t);
                    b.push(t);
                    expanded = self.add(&expanded, &self.monomial(&a, &b));
                }
                tower_ok &= expanded == eps[i][j];
            }
        }
        Ok(MatrixUnitReport {
            n: self.n,
            l,
            size,
            product_law_checked,
            product_law_failures,
            sum_is_one,
            all_degree_zero,
            tower_ok,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixUnitReport {
    pub n: usize,
    pub l: usize,
    /// Number of units per side, `n^l`.
    pub size: usize,
    pub product_law_checked: usize,
    /// 1-based quadruples `(i, j, k, m)` violating `ε_ij ε_km = δ_jk ε_im`.
    pub product_law_failures: Vec<(usize, usize, usize, usize)>,
    pub sum_is_one: bool,
    pub all_degree_zero: bool,
    /// Each level-`l` unit equals the sum of the level-`(l+1)` units refining it.
    pub tower_ok: bool,
}

impl MatrixUnitReport {
    pub fn passed(&self) -> bool {
        self.product_law_failures.is_empty() && self.sum_is_one && self.all_degree_zero && self.tower_ok
    }
}

impl fmt::Display for LeavittAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base == Ring::Integers {
            write!(f, "L(1,{})", self.n)
        } else {
            write!(f, "L(1,{}; {})", self.n, self.base)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn l(n: usize) -> LeavittAlgebra {
        LeavittAlgebra::new(n, Ring::Integers).unwrap()
    }

    #[test]
    fn defining_relations() {
        let a = l(2);
        assert!(a.parse("e1' e2").unwrap().is_empty());
        assert_eq!(a.parse("e1' e1").unwrap(), a.scalar(Elem::int(1)));
        assert_eq!(a.format(&a.parse("e2 e2'").unwrap()), "1 - e1 e1'");
        assert_eq!(a.format(&a.parse("e1 e1' + e2 e2'").unwrap()), "1");
    }

    #[test]
    fn rewriting_is_recursive() {
        // e2 e2 e2' e2' = e2 (1 - e1 e1') e2' = 1 - e1 e1' - e2 e1 e1' e2'
        let a = l(2);
        let x = a.parse("e2 e2 e2' e2'").unwrap();
        assert_eq!(a.format(&x), "1 - e1 e1' - e2 e1 e1' e2'");
        assert!(a.contains(&x));
    }

    #[test]
    fn star_is_an_anti_involution() {
        let a = l(3);
        let x = a.parse("e1 e2' + 2 e3 e3' e1").unwrap();
        let y = a.parse("e2 e3 e1' - e3'").unwrap();
        assert_eq!(a.star(&a.star(&x)), x);
        assert_eq!(a.star(&a.mul(&x, &y)), a.mul(&a.star(&y), &a.star(&x)));
        assert_eq!(a.parse("(e1 e2)'").unwrap(), a.parse("e2' e1'").unwrap());
    }

    #[test]
    fn certificate_shapes() {
        let alg = Arc::new(l(3));
        let c = alg.rank_certificate();
        assert_eq!((c.n(), c.m()), (1, 3));
        let ba = c.b().mul(c.a()).unwrap();
        assert!(ba.is_identity());
    }

    #[test]
    fn matrix_units_small() {
        let r = l(2).matrix_units(1, None).unwrap();
        assert!(r.passed());
        assert_eq!(r.product_law_checked, 16);
        assert!(l(2).matrix_units(7, None).is_err());
        let bad = l(2).matrix_units(1, Some(vec![vec![1], vec![1]]));
        assert!(bad.is_err());
    }

    #[test]
    fn format_round_trip() {
        let a = LeavittAlgebra::new(2, Ring::Rationals).unwrap();
        let x = a.parse("1/2 e1 e2' - 3 e2 e2 e2' + 7").unwrap();
        assert_eq!(a.parse(&a.format(&x)).unwrap(), x);
        assert!(a.parse("e3").is_err());
        assert!(LeavittAlgebra::new(1, Ring::Integers).is_err());
        assert!(LeavittAlgebra::new(2, Ring::matrix(Ring::Integers, 2)).is_err());
    }
}

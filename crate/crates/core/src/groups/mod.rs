//! Normal-form arithmetic for the finitely generated groups used throughout
//! the crate: free groups, free abelian groups, `BS(1,k)`, finite cyclic
//! groups and finite direct products of these.
//!
//! Every element has a unique representation, so structural equality is group
//! equality. Balls are taken with respect to a fixed symmetric generating set
//! and are listed in `(length, lexicographic word)` order.

mod kadic;
pub(crate) mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

pub use kadic::KAdic;

use crate::error::{Error, Result};

/// Balls larger than this radius are refused unless a caller asks for more.
pub const DEFAULT_MAX_RADIUS: usize = 8;

/// Refuse to materialise balls with more elements than this.
pub const MAX_BALL_SIZE: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// Free group on `a_1, ..., a_k`.
    Free(usize),
    /// `Z^d` with the standard basis.
    FreeAbelian(usize),
    /// `BS(1,k) = <a, b | b a b^-1 = a^k>`.
    BaumslagSolitar(u32),
    /// `Z/m`.
    Cyclic(u64),
    DirectProduct(Vec<GroupDescriptor>),
}

/// Canonical group element. Free-group letters are `±(i+1)` for generator
/// `a_{i+1}`; `BS(1,k)` elements are pairs `(t, m)` meaning `a^t b^m` in the
/// semidirect product `Z[1/k] ⋊ Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Free(Vec<i32>),
    Abelian(Vec<i64>),
    BaumslagSolitar { t: KAdic, m: i64 },
    Cyclic(u64),
    Tuple(Vec<GroupElement>),
}

pub type FiniteSet = BTreeSet<GroupElement>;

fn letter_key(l: i32) -> i32 {
    2 * (l.abs() - 1) + i32::from(l < 0)
}

fn variant_rank(x: &GroupElement) -> u8 {
    match x {
        GroupElement::Free(_) => 0,
        GroupElement::Abelian(_) => 1,
        GroupElement::BaumslagSolitar { .. } => 2,
        GroupElement::Cyclic(_) => 3,
        GroupElement::Tuple(_) => 4,
    }
}

// Free words are ordered shortlex in the generator order a, A, b, B, ...;
// everything else is ordered by its coordinates.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        use GroupElement::*;
        match (self, other) {
            (Free(a), Free(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.iter().map(|&l| letter_key(l)).cmp(b.iter().map(|&l| letter_key(l)))),
            (Abelian(a), Abelian(b)) => a.cmp(b),
            (BaumslagSolitar { t: t1, m: m1 }, BaumslagSolitar { t: t2, m: m2 }) => t1.cmp(t2).then(m1.cmp(m2)),
            (Cyclic(a), Cyclic(b)) => a.cmp(b),
            (Tuple(a), Tuple(b)) => a.cmp(b),
            _ => variant_rank(self).cmp(&variant_rank(other)),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupDescriptor {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescriptor::Free(_) => GroupElement::Free(Vec::new()),
            GroupDescriptor::FreeAbelian(d) => GroupElement::Abelian(vec![0; *d]),
            GroupDescriptor::BaumslagSolitar(k) => GroupElement::BaumslagSolitar { t: KAdic::zero(*k), m: 0 },
            GroupDescriptor::Cyclic(_) => GroupElement::Cyclic(0),
            GroupDescriptor::DirectProduct(fs) => GroupElement::Tuple(fs.iter().map(|f| f.identity()).collect()),
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (GroupDescriptor::Free(k), GroupElement::Free(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *k)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupDescriptor::FreeAbelian(d), GroupElement::Abelian(v)) => v.len() == *d,
            (GroupDescriptor::BaumslagSolitar(k), GroupElement::BaumslagSolitar { t, .. }) => t.base() == *k,
            (GroupDescriptor::Cyclic(m), GroupElement::Cyclic(r)) => r < m,
            (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    /// Errors unless `x` is an element of `self`.
    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{} is not an element of {}", self.format_element(x), self)))
        }
    }

    /// Product `x·y`; errors when either argument is not an element of `self`.
    pub fn try_mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Product `x·y` for elements already known to belong to `self`.
    ///
    /// Panics on a variant mismatch.
    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match (self, x, y) {
            (GroupDescriptor::Free(_), GroupElement::Free(a), GroupElement::Free(b)) => {
                let mut w = a.clone();
                for &l in b {
                    if w.last() == Some(&-l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                GroupElement::Free(w)
            }
            (GroupDescriptor::FreeAbelian(_), GroupElement::Abelian(a), GroupElement::Abelian(b)) => {
                GroupElement::Abelian(a.iter().zip(b).map(|(p, q)| p + q).collect())
            }
            (
                GroupDescriptor::BaumslagSolitar(k),
                GroupElement::BaumslagSolitar { t, m },
                GroupElement::BaumslagSolitar { t: s, m: n },
            ) => {
                debug_assert!(t.base() == *k && s.base() == *k);
                GroupElement::BaumslagSolitar { t: t.add(&s.scale(*m)), m: m + n }
            }
            (GroupDescriptor::Cyclic(md), GroupElement::Cyclic(a), GroupElement::Cyclic(b)) => {
                GroupElement::Cyclic(((*a as u128 + *b as u128) % *md as u128) as u64)
            }
            (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(a), GroupElement::Tuple(b)) => {
                GroupElement::Tuple(fs.iter().zip(a.iter().zip(b)).map(|(f, (p, q))| f.mul(p, q)).collect())
            }
            _ => panic!("group element does not match descriptor {self}"),
        }
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        match (self, x) {
            (GroupDescriptor::Free(_), GroupElement::Free(w)) => GroupElement::Free(w.iter().rev().map(|l| -l).collect()),
            (GroupDescriptor::FreeAbelian(_), GroupElement::Abelian(v)) => GroupElement::Abelian(v.iter().map(|c| -c).collect()),
            (GroupDescriptor::BaumslagSolitar(_), GroupElement::BaumslagSolitar { t, m }) => {
                GroupElement::BaumslagSolitar { t: t.scale(-m).neg(), m: -m }
            }
            (GroupDescriptor::Cyclic(md), GroupElement::Cyclic(r)) => GroupElement::Cyclic((md - r) % md),
            (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) => {
                GroupElement::Tuple(fs.iter().zip(xs).map(|(f, x)| f.inverse(x)).collect())
            }
            _ => panic!("group element does not match descriptor {self}"),
        }
    }

    pub fn pow(&self, x: &GroupElement, e: i64) -> GroupElement {
        let base = if e < 0 { self.inverse(x) } else { x.clone() };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    pub fn is_identity(&self, x: &GroupElement) -> bool {
        *x == self.identity()
    }

    /// The fixed generating set `a_1, ..., a_k` (free), standard basis (`Z^d`),
    /// `a, b` (`BS(1,k)`), `1` (cyclic), or the union of factor generators.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupDescriptor::Free(k) => (1..=*k as i32).map(|i| GroupElement::Free(vec![i])).collect(),
            GroupDescriptor::FreeAbelian(d) => (0..*d)
                .map(|i| {
                    let mut v = vec![0; *d];
                    v[i] = 1;
                    GroupElement::Abelian(v)
                })
                .collect(),
            GroupDescriptor::BaumslagSolitar(_) => vec![self.bs_a(), self.bs_b()],
            GroupDescriptor::Cyclic(m) => {
                if *m == 1 {
                    vec![]
                } else {
                    vec![GroupElement::Cyclic(1)]
                }
            }
            GroupDescriptor::DirectProduct(fs) => {
                let mut out = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    for g in f.generators() {
                        let mut parts: Vec<GroupElement> = fs.iter().map(|h| h.identity()).collect();
                        parts[i] = g;
                        out.push(GroupElement::Tuple(parts));
                    }
                }
                out
            }
        }
    }

    /// Generators followed by their inverses, interleaved (`a, a^-1, b, b^-1, ...`),
    /// with duplicates removed.
    pub fn symmetric_generators(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = Vec::new();
        for g in self.generators() {
            let inv = self.inverse(&g);
            if !out.contains(&g) {
                out.push(g);
            }
            if !out.contains(&inv) {
                out.push(inv);
            }
        }
        out
    }

    fn bs_base(&self) -> u32 {
        match self {
            GroupDescriptor::BaumslagSolitar(k) => *k,
            _ => panic!("{self} is not a Baumslag-Solitar group"),
        }
    }

    /// The generator `a = (1, 0)` of `BS(1,k)`.
    pub fn bs_a(&self) -> GroupElement {
        GroupElement::BaumslagSolitar { t: KAdic::integer(1, self.bs_base()), m: 0 }
    }

    /// The generator `b = (0, 1)` of `BS(1,k)`.
    pub fn bs_b(&self) -> GroupElement {
        GroupElement::BaumslagSolitar { t: KAdic::zero(self.bs_base()), m: 1 }
    }

    /// Ball of radius `r` around the identity, `r ≤ DEFAULT_MAX_RADIUS`.
    pub fn ball(&self, r: usize) -> Result<Vec<GroupElement>> {
        self.ball_with_max(r, DEFAULT_MAX_RADIUS)
    }

    pub fn ball_with_max(&self, r: usize, max_radius: usize) -> Result<Vec<GroupElement>> {
        if r > max_radius {
            return Err(Error::BoundExceeded(format!("radius {r} exceeds the configured maximum {max_radius}")));
        }
        Ok(self.ball_layers(r)?.into_iter().flatten().collect())
    }

    /// Spheres `S_0, ..., S_r`; each in lexicographic order of least words.
    pub fn ball_layers(&self, r: usize) -> Result<Vec<Vec<GroupElement>>> {
        let gens = self.symmetric_generators();
        let id = self.identity();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        seen.insert(id.clone());
        let mut layers = vec![vec![id]];
        for _ in 0..r {
            let mut next = Vec::new();
            for x in layers.last().unwrap() {
                for g in &gens {
                    let y = self.mul(x, g);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if seen.len() > MAX_BALL_SIZE {
                return Err(Error::BoundExceeded(format!("ball exceeds {MAX_BALL_SIZE} elements")));
            }
            if next.is_empty() {
                break;
            }
            layers.push(next);
        }
        Ok(layers)
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GroupDescriptor::Cyclic(m) => Some(*m),
            GroupDescriptor::DirectProduct(fs) => fs.iter().map(|f| f.order()).product(),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// All elements of a finite group, identity first, in ball order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let n = self.order().ok_or_else(|| Error::InvalidArgument(format!("{self} is infinite")))?;
        if n > MAX_BALL_SIZE as u64 {
            return Err(Error::BoundExceeded(format!("group of order {n} is too large")));
        }
        let layers = self.ball_layers(n as usize)?;
        Ok(layers.into_iter().flatten().collect())
    }

    /// Word length with respect to the symmetric generating set, by BFS up to `max`.
    pub fn word_length(&self, x: &GroupElement, max: usize) -> Option<usize> {
        match (self, x) {
            (GroupDescriptor::Free(_), GroupElement::Free(w)) => Some(w.len()),
            (GroupDescriptor::FreeAbelian(_), GroupElement::Abelian(v)) => {
                Some(v.iter().map(|c| c.unsigned_abs() as usize).sum())
            }
            _ => self
                .ball_layers(max)
                .ok()?
                .iter()
                .position(|layer| layer.contains(x)),
        }
    }

    /// `gA = {g·a : a ∈ A}`.
    pub fn translate_set(&self, g: &GroupElement, set: &FiniteSet) -> Result<FiniteSet> {
        self.check(g)?;
        set.iter().map(|a| self.check(a).map(|_| self.mul(g, a))).collect()
    }

    /// `KA = {k·a : k ∈ K, a ∈ A}`.
    pub fn set_product(&self, k: &FiniteSet, a: &FiniteSet) -> Result<FiniteSet> {
        for x in k.iter().chain(a.iter()) {
            self.check(x)?;
        }
        Ok(k.iter().flat_map(|x| a.iter().map(move |y| self.mul(x, y))).collect())
    }

    pub fn inverse_set(&self, set: &FiniteSet) -> FiniteSet {
        set.iter().map(|x| self.inverse(x)).collect()
    }

    /// Convenience: an element of `Z` (only for `FreeAbelian(1)`).
    pub fn int(&self, n: i64) -> GroupElement {
        match self {
            GroupDescriptor::FreeAbelian(1) => GroupElement::Abelian(vec![n]),
            _ => panic!("int() is only defined for Z"),
        }
    }

    /// Convenience: the `BS(1,k)` element `(t, m)` with `t` given as text such as `"3/4"`.
    pub fn bs(&self, t: &str, m: i64) -> Result<GroupElement> {
        Ok(GroupElement::BaumslagSolitar { t: KAdic::parse(t, self.bs_base())?, m })
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Free(k) => write!(f, "F{k}"),
            GroupDescriptor::FreeAbelian(1) => write!(f, "Z"),
            GroupDescriptor::FreeAbelian(d) => write!(f, "Z^{d}"),
            GroupDescriptor::BaumslagSolitar(k) => write!(f, "BS(1,{k})"),
            GroupDescriptor::Cyclic(m) => write!(f, "C({m})"),
            GroupDescriptor::DirectProduct(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

#[cfg(test)]
mod tests;

//! Exact coefficient rings, matrices over them, and rank certificates.
//!
//! A [`Ring`] is a descriptor; ring elements are plain [`Elem`] values that
//! only make sense together with the descriptor they were produced by. All
//! representations are canonical, so `==` on elements is ring equality.

mod certificate;
mod hom;
mod matrix;
mod text;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use certificate::{CertificateStatus, RankCertificate};
pub use hom::RingHom;
pub use matrix::RingMatrix;
pub use text::parse_rational;

use crate::algebras::leavitt::{LeavittAlgebra, LeavittElem};
use crate::algebras::weyl::{WeylAlgebra, WeylElem};
use crate::graded::crossed::{CrossedElem, CrossedSystem};

/// Largest matrix size for which [`Ring::try_inverse`] expands cofactors.
const INVERSE_MAX_SIZE: usize = 6;

#[derive(Clone, Debug)]
pub enum Ring {
    Integers,
    IntegersMod(u64),
    Rationals,
    /// `M_size(base)`.
    Matrix { base: Box<Ring>, size: usize },
    /// Finite direct product.
    Product(Vec<Ring>),
    /// Same elements and addition, multiplication reversed.
    Opposite(Box<Ring>),
    Leavitt(Arc<LeavittAlgebra>),
    Weyl(Arc<WeylAlgebra>),
    /// Crossed product `R *_ω^σ G` over a finite group (group rings included).
    Crossed(Arc<CrossedSystem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    /// Elements of `Z` and residues in `0..m` for `Z/m`.
    Int(BigInt),
    Rat(BigRational),
    /// Row-major square matrix.
    Matrix(Vec<Elem>),
    Tuple(Vec<Elem>),
    Leavitt(LeavittElem),
    Weyl(WeylElem),
    Crossed(CrossedElem),
}

impl Elem {
    pub fn int(n: i64) -> Elem {
        Elem::Int(BigInt::from(n))
    }

    /// The rational `n/d`; panics when `d = 0`.
    pub fn rat(n: i64, d: i64) -> Elem {
        Elem::Rat(BigRational::new(n.into(), d.into()))
    }
}

/// Strips pairs of `Opposite` and opposites of commutative rings.
fn peel(r: &Ring) -> (&Ring, bool) {
    let mut cur = r;
    let mut flipped = false;
    while let Ring::Opposite(b) = cur {
        cur = b;
        flipped = !flipped;
    }
    if cur.is_commutative() {
        flipped = false;
    }
    (cur, flipped)
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        let (a, fa) = peel(self);
        let (b, fb) = peel(other);
        if fa != fb {
            return false;
        }
        match (a, b) {
            (Ring::Integers, Ring::Integers) | (Ring::Rationals, Ring::Rationals) => true,
            (Ring::IntegersMod(m), Ring::IntegersMod(n)) => m == n,
            (Ring::Matrix { base: b1, size: s1 }, Ring::Matrix { base: b2, size: s2 }) => s1 == s2 && b1 == b2,
            (Ring::Product(x), Ring::Product(y)) => x == y,
            (Ring::Leavitt(x), Ring::Leavitt(y)) => x == y,
            (Ring::Weyl(x), Ring::Weyl(y)) => x == y,
            (Ring::Crossed(x), Ring::Crossed(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn integers_mod(m: u64) -> crate::Result<Ring> {
        if m < 2 {
            return Err(crate::error::invalid("IntegersMod needs m >= 2"));
        }
        Ok(Ring::IntegersMod(m))
    }

    pub fn matrix(base: Ring, size: usize) -> Ring {
        assert!(size >= 1, "matrix size must be positive");
        Ring::Matrix { base: Box::new(base), size }
    }

    /// `R^op`, collapsing double opposites and opposites of commutative rings.
    pub fn opposite(&self) -> Ring {
        match self {
            Ring::Opposite(b) => (**b).clone(),
            r if r.is_commutative() => r.clone(),
            r => Ring::Opposite(Box::new(r.clone())),
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            Ring::Integers | Ring::IntegersMod(_) | Ring::Rationals => true,
            Ring::Matrix { base, size } => *size == 1 && base.is_commutative(),
            Ring::Product(fs) => fs.iter().all(|f| f.is_commutative()),
            Ring::Opposite(b) => b.is_commutative(),
            Ring::Leavitt(_) | Ring::Weyl(_) | Ring::Crossed(_) => false,
        }
    }

    /// `Z`, `Z/m` or `Q`.
    pub fn is_scalar(&self) -> bool {
        matches!(self, Ring::Integers | Ring::IntegersMod(_) | Ring::Rationals)
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Integers | Ring::IntegersMod(_) => Elem::Int(BigInt::zero()),
            Ring::Rationals => Elem::Rat(BigRational::zero()),
            Ring::Matrix { base, size } => Elem::Matrix(vec![base.zero(); size * size]),
            Ring::Product(fs) => Elem::Tuple(fs.iter().map(|f| f.zero()).collect()),
            Ring::Opposite(b) => b.zero(),
            Ring::Leavitt(_) => Elem::Leavitt(LeavittElem::default()),
            Ring::Weyl(_) => Elem::Weyl(WeylElem::default()),
            Ring::Crossed(_) => Elem::Crossed(CrossedElem::default()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// Image of an integer under the unique unital map `Z → R`.
    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            Ring::Integers => Elem::Int(n.clone()),
            Ring::IntegersMod(m) => Elem::Int(n.mod_floor(&BigInt::from(*m))),
            Ring::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            Ring::Matrix { base, size } => {
                let mut e = vec![base.zero(); size * size];
                for i in 0..*size {
                    e[i * size + i] = base.from_bigint(n);
                }
                Elem::Matrix(e)
            }
            Ring::Product(fs) => Elem::Tuple(fs.iter().map(|f| f.from_bigint(n)).collect()),
            Ring::Opposite(b) => b.from_bigint(n),
            Ring::Leavitt(alg) => Elem::Leavitt(alg.scalar(alg.base().from_bigint(n))),
            Ring::Weyl(alg) => Elem::Weyl(alg.scalar(alg.base().from_bigint(n))),
            Ring::Crossed(cs) => Elem::Crossed(cs.scalar(cs.base().from_bigint(n))),
        }
    }

    /// Whether `x` has the shape of an element of this ring.
    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (Ring::Integers, Elem::Int(_)) => true,
            (Ring::IntegersMod(m), Elem::Int(v)) => !v.is_negative() && *v < BigInt::from(*m),
            (Ring::Rationals, Elem::Rat(_)) => true,
            (Ring::Matrix { base, size }, Elem::Matrix(es)) => {
                es.len() == size * size && es.iter().all(|e| base.contains(e))
            }
            (Ring::Product(fs), Elem::Tuple(es)) => fs.len() == es.len() && fs.iter().zip(es).all(|(f, e)| f.contains(e)),
            (Ring::Opposite(b), e) => b.contains(e),
            (Ring::Leavitt(alg), Elem::Leavitt(e)) => alg.contains(e),
            (Ring::Weyl(alg), Elem::Weyl(e)) => alg.contains(e),
            (Ring::Crossed(cs), Elem::Crossed(e)) => cs.contains(e),
            _ => false,
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::Integers, Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (Ring::IntegersMod(m), Elem::Int(a), Elem::Int(b)) => Elem::Int((a + b).mod_floor(&BigInt::from(*m))),
            (Ring::Rationals, Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Ring::Matrix { base, .. }, Elem::Matrix(a), Elem::Matrix(b)) => {
                Elem::Matrix(a.iter().zip(b).map(|(p, q)| base.add(p, q)).collect())
            }
            (Ring::Product(fs), Elem::Tuple(a), Elem::Tuple(b)) => {
                Elem::Tuple(fs.iter().zip(a.iter().zip(b)).map(|(f, (p, q))| f.add(p, q)).collect())
            }
            (Ring::Opposite(b), x, y) => b.add(x, y),
            (Ring::Leavitt(alg), Elem::Leavitt(a), Elem::Leavitt(b)) => Elem::Leavitt(alg.add(a, b)),
            (Ring::Weyl(alg), Elem::Weyl(a), Elem::Weyl(b)) => Elem::Weyl(alg.add(a, b)),
            (Ring::Crossed(cs), Elem::Crossed(a), Elem::Crossed(b)) => Elem::Crossed(cs.add(a, b)),
            _ => panic!("element does not belong to ring {self}"),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match (self, x) {
            (Ring::Integers, Elem::Int(a)) => Elem::Int(-a),
            (Ring::IntegersMod(m), Elem::Int(a)) => Elem::Int((-a).mod_floor(&BigInt::from(*m))),
            (Ring::Rationals, Elem::Rat(a)) => Elem::Rat(-a),
            (Ring::Matrix { base, .. }, Elem::Matrix(a)) => Elem::Matrix(a.iter().map(|p| base.neg(p)).collect()),
            (Ring::Product(fs), Elem::Tuple(a)) => Elem::Tuple(fs.iter().zip(a).map(|(f, p)| f.neg(p)).collect()),
            (Ring::Opposite(b), x) => b.neg(x),
            (Ring::Leavitt(alg), Elem::Leavitt(a)) => Elem::Leavitt(alg.neg(a)),
            (Ring::Weyl(alg), Elem::Weyl(a)) => Elem::Weyl(alg.neg(a)),
            (Ring::Crossed(cs), Elem::Crossed(a)) => Elem::Crossed(cs.neg(a)),
            _ => panic!("element does not belong to ring {self}"),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::Integers, Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b),
            (Ring::IntegersMod(m), Elem::Int(a), Elem::Int(b)) => Elem::Int((a * b).mod_floor(&BigInt::from(*m))),
            (Ring::Rationals, Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Ring::Matrix { base, size }, Elem::Matrix(a), Elem::Matrix(b)) => {
                let s = *size;
                let mut out = Vec::with_capacity(s * s);
                for i in 0..s {
                    for j in 0..s {
                        let mut acc = base.zero();
                        for k in 0..s {
                            let p = &a[i * s + k];
                            let q = &b[k * s + j];
                            if base.is_zero(p) || base.is_zero(q) {
                                continue;
                            }
                            acc = base.add(&acc, &base.mul(p, q));
                        }
                        out.push(acc);
                    }
                }
                Elem::Matrix(out)
            }
            (Ring::Product(fs), Elem::Tuple(a), Elem::Tuple(b)) => {
                Elem::Tuple(fs.iter().zip(a.iter().zip(b)).map(|(f, (p, q))| f.mul(p, q)).collect())
            }
            (Ring::Opposite(b), x, y) => b.mul(y, x),
            (Ring::Leavitt(alg), Elem::Leavitt(a), Elem::Leavitt(b)) => Elem::Leavitt(alg.mul(a, b)),
            (Ring::Weyl(alg), Elem::Weyl(a), Elem::Weyl(b)) => Elem::Weyl(alg.mul(a, b)),
            (Ring::Crossed(cs), Elem::Crossed(a), Elem::Crossed(b)) => Elem::Crossed(cs.mul(a, b)),
            _ => panic!("element does not belong to ring {self}"),
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(v) => v.is_zero(),
            Elem::Rat(v) => v.is_zero(),
            _ => *x == self.zero(),
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Elem>) -> Elem {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn pow(&self, x: &Elem, e: u32) -> Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Two-sided inverse when one can be computed exactly.
    pub fn try_inverse(&self, x: &Elem) -> Option<Elem> {
        let inv = match (self, x) {
            (Ring::Integers, Elem::Int(a)) => {
                if a.abs().is_one() {
                    Some(x.clone())
                } else {
                    None
                }
            }
            (Ring::IntegersMod(m), Elem::Int(a)) => {
                let m = BigInt::from(*m);
                let e = a.extended_gcd(&m);
                if e.gcd.is_one() {
                    Some(Elem::Int(e.x.mod_floor(&m)))
                } else {
                    None
                }
            }
            (Ring::Rationals, Elem::Rat(a)) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Elem::Rat(a.recip()))
                }
            }
            (Ring::Product(fs), Elem::Tuple(a)) => {
                let parts: Option<Vec<Elem>> = fs.iter().zip(a).map(|(f, p)| f.try_inverse(p)).collect();
                parts.map(Elem::Tuple)
            }
            (Ring::Opposite(b), x) => b.try_inverse(x),
            (Ring::Matrix { base, size }, Elem::Matrix(a)) if base.is_commutative() && *size <= INVERSE_MAX_SIZE => {
                matrix_inverse(base, *size, a)
            }
            (Ring::Leavitt(_), _) | (Ring::Weyl(_), _) | (Ring::Crossed(_), _) => {
                // only scalar multiples of 1 are handled
                let base = self.scalar_base()?;
                let c = self.scalar_part(x)?;
                let ci = base.try_inverse(&c)?;
                Some(self.embed_scalar(&ci))
            }
            _ => None,
        }?;
        // re-check rather than trust the formula
        if self.is_one(&self.mul(x, &inv)) && self.is_one(&self.mul(&inv, x)) {
            Some(inv)
        } else {
            None
        }
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        self.try_inverse(x).is_some()
    }

    fn scalar_base(&self) -> Option<&Ring> {
        match self {
            Ring::Leavitt(a) => Some(a.base()),
            Ring::Weyl(a) => Some(a.base()),
            Ring::Crossed(c) => Some(c.base()),
            _ => None,
        }
    }

    /// Coefficient `c` when `x = c·1`.
    fn scalar_part(&self, x: &Elem) -> Option<Elem> {
        let c = match (self, x) {
            (Ring::Leavitt(a), Elem::Leavitt(e)) => a.constant_term(e),
            (Ring::Weyl(a), Elem::Weyl(e)) => a.constant_term(e),
            (Ring::Crossed(cs), Elem::Crossed(e)) => cs.coefficient(e, cs.identity_index()),
            _ => return None,
        };
        if self.embed_scalar(&c) == *x {
            Some(c)
        } else {
            None
        }
    }

    fn embed_scalar(&self, c: &Elem) -> Elem {
        match self {
            Ring::Leavitt(a) => Elem::Leavitt(a.scalar(c.clone())),
            Ring::Weyl(a) => Elem::Weyl(a.scalar(c.clone())),
            Ring::Crossed(cs) => Elem::Crossed(cs.scalar(c.clone())),
            _ => c.clone(),
        }
    }

    /// Flattens an element into exact rational coordinates keyed by a path.
    ///
    /// Used for linear searches; residues of `Z/m` are read as integers.
    pub fn coordinates(&self, x: &Elem) -> Vec<(String, BigRational)> {
        let mut out = Vec::new();
        self.collect_coordinates(x, String::new(), &mut out);
        out.retain(|(_, v)| !v.is_zero());
        out
    }

    fn collect_coordinates(&self, x: &Elem, prefix: String, out: &mut Vec<(String, BigRational)>) {
        match (self, x) {
            (_, Elem::Int(v)) => out.push((prefix, BigRational::from_integer(v.clone()))),
            (_, Elem::Rat(v)) => out.push((prefix, v.clone())),
            (Ring::Matrix { base, .. }, Elem::Matrix(es)) => {
                for (i, e) in es.iter().enumerate() {
                    base.collect_coordinates(e, format!("{prefix}/m{i}"), out);
                }
            }
            (Ring::Product(fs), Elem::Tuple(es)) => {
                for (i, (f, e)) in fs.iter().zip(es).enumerate() {
                    f.collect_coordinates(e, format!("{prefix}/p{i}"), out);
                }
            }
            (Ring::Opposite(b), x) => b.collect_coordinates(x, prefix, out),
            (Ring::Leavitt(a), Elem::Leavitt(e)) => {
                for ((al, be), c) in e.terms() {
                    a.base().collect_coordinates(c, format!("{prefix}/l{al:?}{be:?}"), out);
                }
            }
            (Ring::Weyl(a), Elem::Weyl(e)) => {
                for ((w, l), c) in e.terms() {
                    a.base().collect_coordinates(c, format!("{prefix}/w{w:?}{l}"), out);
                }
            }
            (Ring::Crossed(cs), Elem::Crossed(e)) => {
                for (g, c) in e.terms() {
                    cs.base().collect_coordinates(c, format!("{prefix}/g{g}"), out);
                }
            }
            _ => panic!("element does not belong to ring {self}"),
        }
    }
}

/// Inverse of a square matrix over a commutative ring via the adjugate.
fn matrix_inverse(base: &Ring, s: usize, a: &[Elem]) -> Option<Elem> {
    let det = determinant(base, s, a);
    let det_inv = base.try_inverse(&det)?;
    let mut out = vec![base.zero(); s * s];
    for i in 0..s {
        for j in 0..s {
            // adj(A)_{ij} = (-1)^{i+j} det(minor_{ji})
            let minor = minor(s, a, j, i);
            let mut c = if s == 1 { base.one() } else { determinant(base, s - 1, &minor) };
            if (i + j) % 2 == 1 {
                c = base.neg(&c);
            }
            out[i * s + j] = base.mul(&det_inv, &c);
        }
    }
    Some(Elem::Matrix(out))
}

fn minor(s: usize, a: &[Elem], row: usize, col: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity((s - 1) * (s - 1));
    for i in (0..s).filter(|&i| i != row) {
        for j in (0..s).filter(|&j| j != col) {
            out.push(a[i * s + j].clone());
        }
    }
    out
}

fn determinant(base: &Ring, s: usize, a: &[Elem]) -> Elem {
    if s == 1 {
        return a[0].clone();
    }
    let mut acc = base.zero();
    for j in 0..s {
        if base.is_zero(&a[j]) {
            continue;
        }
        let term = base.mul(&a[j], &determinant(base, s - 1, &minor(s, a, 0, j)));
        acc = if j % 2 == 0 { base.add(&acc, &term) } else { base.sub(&acc, &term) };
    }
    acc
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::IntegersMod(m) => write!(f, "Z/{m}"),
            Ring::Rationals => write!(f, "Q"),
            Ring::Matrix { base, size } => write!(f, "M{size}({base})"),
            Ring::Product(fs) => {
                write!(f, "prod({})", fs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "))
            }
            Ring::Opposite(b) => write!(f, "op({b})"),
            Ring::Leavitt(a) => write!(f, "{a}"),
            Ring::Weyl(a) => write!(f, "{a}"),
            Ring::Crossed(c) => write!(f, "{c}"),
        }
    }
}

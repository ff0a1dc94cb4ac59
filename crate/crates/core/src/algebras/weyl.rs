//! Generalized Weyl algebras over a scalar ring `S`: generators
//! `x_1..x_n, y` with `y x_i = a_i x_i y + b_i`, `a_i` units of `S`.
//!
//! Elements are stored in the basis of monomials `x_{i_1}..x_{i_k} y^l`.
//! The mirrored basis `y^l x_{i_1}..x_{i_k}` is available through
//! [`WeylAlgebra::to_mirrored`], using `x_i y = a_i^{-1}(y x_i - b_i)`.
//! The algebra is `Z`-graded by `deg x_i = 1`, `deg y = -1`.

use std::collections::BTreeMap;
use std::fmt;

use super::expr::{evaluate, parse_expr};
use crate::error::{parse_err, Error, Result};
use crate::rings::{Elem, Ring};

/// Monomial `x_w y^l` (x-word, y exponent); letters `1..=n`.
pub type WeylMonomial = (Vec<u8>, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylAlgebra {
    base: Ring,
    a: Vec<Elem>,
    b: Vec<Elem>,
    a_inv: Vec<Elem>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeylElem {
    terms: BTreeMap<WeylMonomial, Elem>,
}

impl WeylElem {
    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &Elem)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Element written in the mirrored basis: keys `(l, w)` mean `y^l x_w`.
pub type MirroredElem = BTreeMap<(u32, Vec<u8>), Elem>;

fn degree(m: &WeylMonomial) -> i64 {
    m.0.len() as i64 - m.1 as i64
}

impl WeylAlgebra {
    pub fn new(base: Ring, a: Vec<Elem>, b: Vec<Elem>) -> Result<WeylAlgebra> {
        if !base.is_scalar() {
            return Err(Error::Unsupported(format!("Weyl coefficients must lie in Z, Z/m or Q, not {base}")));
        }
        if a.is_empty() || a.len() != b.len() || a.len() > 255 {
            return Err(Error::InvalidArgument("need 1..=255 parameters a_i and the same number of b_i".into()));
        }
        if let Some(x) = a.iter().chain(&b).find(|x| !base.contains(x)) {
            return Err(Error::InvalidArgument(format!("parameter {x:?} is not an element of {base}")));
        }
        let mut a_inv = Vec::new();
        for (i, ai) in a.iter().enumerate() {
            let inv = base
                .try_inverse(ai)
                .ok_or_else(|| Error::Precondition(format!("a_{} = {} is not a unit of {base}", i + 1, base.format_elem(ai))))?;
            a_inv.push(inv);
        }
        Ok(WeylAlgebra { base, a, b, a_inv })
    }

    /// The classical Weyl algebra in `n` variables over `Z` (`a_i = b_i = 1`).
    pub fn classical(n: usize) -> Result<WeylAlgebra> {
        WeylAlgebra::new(Ring::Integers, vec![Elem::int(1); n], vec![Elem::int(1); n])
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn params(&self) -> (&[Elem], &[Elem]) {
        (&self.a, &self.b)
    }

    pub fn contains(&self, x: &WeylElem) -> bool {
        x.terms.iter().all(|((w, _), c)| {
            w.iter().all(|&l| l >= 1 && l as usize <= self.n()) && self.base.contains(c) && !self.base.is_zero(c)
        })
    }

    fn push(&self, out: &mut WeylElem, key: WeylMonomial, c: Elem) {
        push_into(&self.base, &mut out.terms, key, c);
    }

    pub fn scalar(&self, c: Elem) -> WeylElem {
        let mut out = WeylElem::default();
        self.push(&mut out, (Vec::new(), 0), c);
        out
    }

    pub fn monomial(&self, word: &[u8], l: u32) -> WeylElem {
        let mut out = WeylElem::default();
        self.push(&mut out, (word.to_vec(), l), self.base.one());
        out
    }

    pub fn x(&self, i: u8) -> WeylElem {
        self.monomial(&[i], 0)
    }

    pub fn y(&self) -> WeylElem {
        self.monomial(&[], 1)
    }

    pub fn constant_term(&self, x: &WeylElem) -> Elem {
        x.terms.get(&(Vec::new(), 0)).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn add(&self, x: &WeylElem, y: &WeylElem) -> WeylElem {
        let mut out = x.clone();
        for (k, c) in &y.terms {
            self.push(&mut out, k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, x: &WeylElem) -> WeylElem {
        WeylElem { terms: x.terms.iter().map(|(k, c)| (k.clone(), self.base.neg(c))).collect() }
    }

    /// `y^l · x_w` in the standard basis, by `y x_i = a_i x_i y + b_i`.
    fn y_pow_word(&self, l: u32, w: &[u8]) -> WeylElem {
        let mut cur = self.monomial(w, 0);
        for _ in 0..l {
            cur = self.y_times(&cur);
        }
        cur
    }

    /// `y · x`.
    fn y_times(&self, x: &WeylElem) -> WeylElem {
        let mut out = WeylElem::default();
        for ((w, l), c) in &x.terms {
            self.y_times_monomial(&mut out, &[], w, *l, c.clone());
        }
        out
    }

    /// Adds `c · prefix · y · x_w y^l` to `out`.
    fn y_times_monomial(&self, out: &mut WeylElem, prefix: &[u8], w: &[u8], l: u32, c: Elem) {
        match w.split_first() {
            None => {
                self.push(out, (prefix.to_vec(), l + 1), c);
            }
            Some((&i, rest)) => {
                let idx = i as usize - 1;
                // b_i term: prefix · rest · y^l
                let mut word = prefix.to_vec();
                word.extend_from_slice(rest);
                self.push(out, (word, l), self.base.mul(&c, &self.b[idx]));
                // a_i term: prefix · x_i · y · rest · y^l
                let mut p = prefix.to_vec();
                p.push(i);
                self.y_times_monomial(out, &p, rest, l, self.base.mul(&c, &self.a[idx]));
            }
        }
    }

    pub fn mul(&self, x: &WeylElem, y: &WeylElem) -> WeylElem {
        let mut out = WeylElem::default();
        for ((w1, l1), c1) in &x.terms {
            for ((w2, l2), c2) in &y.terms {
                let c = self.base.mul(c1, c2);
                let mid = self.y_pow_word(*l1, w2);
                for ((w, l), cm) in mid.terms {
                    let mut word = w1.clone();
                    word.extend(w);
                    self.push(&mut out, (word, l + l2), self.base.mul(&c, &cm));
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &WeylElem, e: u32) -> WeylElem {
        (0..e).fold(self.scalar(self.base.one()), |acc, _| self.mul(&acc, x))
    }

    pub fn degrees(&self, x: &WeylElem) -> Vec<i64> {
        let mut d: Vec<i64> = x.terms.keys().map(degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_degree(&self, x: &WeylElem) -> Option<i64> {
        match self.degrees(x).as_slice() {
            [] => Some(0),
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn component(&self, x: &WeylElem, d: i64) -> WeylElem {
        WeylElem { terms: x.terms.iter().filter(|(k, _)| degree(k) == d).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    /// Coefficient of `1` of a degree-0 element in the basis
    /// `{x_w y^k : |w| = k > 0} ∪ {1}` of the degree-0 component.
    pub fn phi0(&self, r: &WeylElem) -> Result<Elem> {
        if self.homogeneous_degree(r) != Some(0) {
            return Err(Error::Precondition("phi0 is defined on degree-0 elements only".into()));
        }
        Ok(self.constant_term(r))
    }

    /// Rewrites `x` in the mirrored basis `y^l x_w` using
    /// `x_i y = a_i^{-1} y x_i - a_i^{-1} b_i`.
    pub fn to_mirrored(&self, x: &WeylElem) -> MirroredElem {
        let mut out = MirroredElem::new();
        for ((w, l), c) in &x.terms {
            // start from y^l and multiply the letters of w on the left
            let mut cur = MirroredElem::new();
            push_into(&self.base, &mut cur, (*l, Vec::new()), c.clone());
            for &i in w.iter().rev() {
                cur = self.x_times_mirrored(i, &cur);
            }
            for (k, v) in cur {
                push_into(&self.base, &mut out, k, v);
            }
        }
        out
    }

    /// `x_i · m` for `m` in the mirrored basis.
    fn x_times_mirrored(&self, i: u8, m: &MirroredElem) -> MirroredElem {
        let mut out = MirroredElem::new();
        for ((l, w), c) in m {
            self.x_times_mirrored_monomial(&mut out, i, *l, w, c.clone());
        }
        out
    }

    /// Adds `c · x_i · y^l x_w`.
    fn x_times_mirrored_monomial(&self, out: &mut MirroredElem, i: u8, l: u32, w: &[u8], c: Elem) {
        if l == 0 {
            let mut word = vec![i];
            word.extend_from_slice(w);
            push_into(&self.base, out, (0, word), c);
            return;
        }
        let idx = i as usize - 1;
        let ainv = &self.a_inv[idx];
        // x_i y^l w = a_i^{-1} y (x_i y^{l-1} w) - a_i^{-1} b_i y^{l-1} w
        let neg = self.base.neg(&self.base.mul(&self.base.mul(&c, ainv), &self.b[idx]));
        push_into(&self.base, out, (l - 1, w.to_vec()), neg);
        let mut inner = MirroredElem::new();
        self.x_times_mirrored_monomial(&mut inner, i, l - 1, w, self.base.mul(&c, ainv));
        for ((l2, w2), v) in inner {
            push_into(&self.base, out, (l2 + 1, w2), v);
        }
    }

    /// Converts a mirrored-basis expression back to the standard basis.
    pub fn from_mirrored(&self, m: &MirroredElem) -> WeylElem {
        let mut out = WeylElem::default();
        for ((l, w), c) in m {
            for (k, v) in self.y_pow_word(*l, w).terms {
                self.push(&mut out, k, self.base.mul(c, &v));
            }
        }
        out
    }

    /// Free basis of the degree-`m` component as a right module over the
    /// degree-0 component: the `n^m` x-words for `m > 0`, `{1}` for `m = 0`
    /// and `{y^|m|}` for `m < 0`.
    pub fn component_basis(&self, m: i64) -> ComponentBasis {
        if m > 0 {
            let mut words = vec![Vec::new()];
            for _ in 0..m {
                words = words
                    .into_iter()
                    .flat_map(|w: Vec<u8>| {
                        (1..=self.n() as u8).map(move |i| {
                            let mut v = w.clone();
                            v.push(i);
                            v
                        })
                    })
                    .collect();
            }
            ComponentBasis::XWords(words)
        } else if m < 0 {
            ComponentBasis::YPower(m.unsigned_abs() as u32)
        } else {
            ComponentBasis::DegreeZero
        }
    }

    /// Basis elements of the degree-`m` component as algebra elements.
    pub fn basis_elements(&self, m: i64) -> Vec<WeylElem> {
        match self.component_basis(m) {
            ComponentBasis::XWords(ws) => ws.iter().map(|w| self.monomial(w, 0)).collect(),
            ComponentBasis::YPower(l) => vec![self.monomial(&[], l)],
            ComponentBasis::DegreeZero => vec![self.scalar(self.base.one())],
        }
    }

    /// Coordinates of a homogeneous degree-`m` element `r` over the
    /// degree-0 component: `r = Σ_i basis_i · c_i`.
    pub fn right_coordinates(&self, r: &WeylElem, m: i64) -> Result<Vec<WeylElem>> {
        if !r.is_empty() && self.homogeneous_degree(r) != Some(m) {
            return Err(Error::Precondition(format!("element is not homogeneous of degree {m}")));
        }
        match self.component_basis(m) {
            ComponentBasis::DegreeZero => Ok(vec![r.clone()]),
            ComponentBasis::XWords(words) => {
                let mut coords = vec![WeylElem::default(); words.len()];
                for ((w, l), c) in &r.terms {
                    let m = m as usize;
                    let idx = words.binary_search_by(|b| b.as_slice().cmp(&w[..m])).expect("prefix is a basis word");
                    self.push(&mut coords[idx], (w[m..].to_vec(), *l), c.clone());
                }
                Ok(coords)
            }
            ComponentBasis::YPower(p) => {
                let mut rest = MirroredElem::new();
                for ((l, w), c) in self.to_mirrored(r) {
                    // degree -p terms y^l x_w have l = p + |w|
                    push_into(&self.base, &mut rest, (l - p, w), c);
                }
                Ok(vec![self.from_mirrored(&rest)])
            }
        }
    }

    pub fn parse(&self, s: &str) -> Result<WeylElem> {
        let ring = Ring::Weyl(self.clone().into());
        let expr = parse_expr(s)?;
        let gen = |name: &str, starred: bool| -> Result<Elem> {
            if starred {
                return Err(parse_err("Weyl algebras have no starred generators"));
            }
            if name == "y" {
                return Ok(Elem::Weyl(self.y()));
            }
            let i = name
                .strip_prefix('x')
                .and_then(|d| if d.is_empty() && self.n() == 1 { Some(1) } else { d.parse::<usize>().ok() })
                .filter(|&i| i >= 1 && i <= self.n())
                .ok_or_else(|| parse_err(format!("unknown generator `{name}`")))?;
            Ok(Elem::Weyl(self.x(i as u8)))
        };
        match evaluate(&ring, &expr, &gen, None)? {
            Elem::Weyl(e) => Ok(e),
            _ => unreachable!("Weyl evaluation yields Weyl elements"),
        }
    }

    pub fn format(&self, x: &WeylElem) -> String {
        let terms = x.terms.iter().map(|((w, l), c)| {
            let mut word: Vec<String> = w.iter().map(|i| format!("x{i}")).collect();
            match l {
                0 => {}
                1 => word.push("y".into()),
                _ => word.push(format!("y^{l}")),
            }
            (word.join(" "), c)
        });
        super::format_terms(&self.base, terms)
    }
}

fn push_into<K: Ord>(base: &Ring, map: &mut BTreeMap<K, Elem>, key: K, c: Elem) {
    if base.is_zero(&c) {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            let s = base.add(v, &c);
            if base.is_zero(&s) {
                map.remove(&key);
            } else {
                *v = s;
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentBasis {
    /// All x-words of the given length, lexicographic.
    XWords(Vec<Vec<u8>>),
    /// The single element `y^l`.
    YPower(u32),
    /// The degree-0 component itself (basis `{1}` as a module over itself;
    /// as an `S`-module it is spanned by `1` and the `x_w y^{|w|}`).
    DegreeZero,
}

impl fmt::Display for WeylAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Elem]| v.iter().map(|x| self.base.format_elem(x)).collect::<Vec<_>>().join(", ");
        write!(f, "Weyl({}; a={}; b={})", self.base, list(&self.a), list(&self.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation_rule() {
        let w = WeylAlgebra::classical(1).unwrap();
        assert_eq!(w.format(&w.parse("y x").unwrap()), "1 + x1 y");
        assert_eq!(w.format(&w.parse("y x^2").unwrap()), "2 x1 + x1 x1 y");
        assert_eq!(w.format(&w.parse("y 1").unwrap()), "y");
    }

    #[test]
    fn quantum_parameters() {
        // y x1 = 2 x1 y + 3 over Q
        let w = WeylAlgebra::new(Ring::Rationals, vec![Elem::rat(2, 1)], vec![Elem::rat(3, 1)]).unwrap();
        assert_eq!(w.format(&w.parse("y x1").unwrap()), "3 + 2 x1 y");
        assert!(WeylAlgebra::new(Ring::Integers, vec![Elem::int(2)], vec![Elem::int(0)]).is_err());
    }

    #[test]
    fn mirrored_basis_round_trip() {
        let w = WeylAlgebra::new(Ring::Rationals, vec![Elem::rat(2, 1), Elem::rat(-1, 1)], vec![
            Elem::rat(1, 1),
            Elem::rat(5, 1),
        ])
        .unwrap();
        for s in ["x1 y", "x1 x2 y^2", "y x2 x1", "x2 y x1 y^3 + 4", "x1 x1 x2"] {
            let e = w.parse(s).unwrap();
            let m = w.to_mirrored(&e);
            assert_eq!(w.from_mirrored(&m), e, "{s}");
        }
        // x1 y = a^{-1}(y x1 - b) = 1/2 y x1 - 1/2
        let m = w.to_mirrored(&w.parse("x1 y").unwrap());
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn right_coordinates_reassemble() {
        let w = WeylAlgebra::classical(2).unwrap();
        let samples = [("x1 x2 y + x2", 1), ("y^2 x1 + 3 y", -1), ("x1 y + 2", 0), ("x2 x1 x1 y", 2)];
        for (s, m) in samples {
            let r = w.parse(s).unwrap();
            let coords = w.right_coordinates(&r, m).unwrap();
            let basis = w.basis_elements(m);
            let back = basis.iter().zip(&coords).fold(WeylElem::default(), |acc, (b, c)| w.add(&acc, &w.mul(b, c)));
            assert_eq!(back, r, "{s}");
            assert!(coords.iter().all(|c| w.homogeneous_degree(c) == Some(0)));
        }
    }

    #[test]
    fn phi0_reads_constant() {
        let w = WeylAlgebra::classical(1).unwrap();
        assert_eq!(w.phi0(&w.parse("y x").unwrap()).unwrap(), Elem::int(1));
        assert_eq!(w.phi0(&w.parse("x y").unwrap()).unwrap(), Elem::int(0));
        assert!(w.phi0(&w.parse("x").unwrap()).is_err());
    }
}

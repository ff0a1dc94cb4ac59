//! The cyclic monoids `C(n,k) = ⟨a : (n+k)a = na⟩` and the abelian monoids
//! `M(n,k,l)` generated by `u, x_1..x_l, y_1..y_l` subject to
//! `(n+k)σ = nσ` (with `σ = u + Σ x_i`) and `x_i + y_i = u`.
//!
//! `C(n,k)` has a canonical form and a closed-form order. `M(n,k,l)` does not
//! get one: order questions are answered by the separating homomorphisms
//! `φ: M → C(n,k)` and `ψ_j: M → Z`, or by a bounded search through
//! rewrites, and may come back `Unknown`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, parse_err, Error, Result};

/// Default number of relation applications explored by [`Mnkl::leq`].
pub const DEFAULT_CLOSURE_DEPTH: usize = 10;

/// Hard cap on the number of representatives visited in one search.
pub const CLOSURE_STATE_LIMIT: usize = 200_000;

/// The monoid `C(n,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cnk {
    pub n: u64,
    pub k: u64,
}

/// An element `λa` of `C(n,k)` with `λ` kept canonical (`λ < n + k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CnkElement {
    pub monoid: Cnk,
    pub coefficient: u64,
}

impl Cnk {
    pub fn new(n: u64, k: u64) -> Result<Cnk> {
        if n == 0 || k == 0 {
            return Err(invalid(format!("C(n,k) needs n, k >= 1, got ({n}, {k})")));
        }
        Ok(Cnk { n, k })
    }

    pub fn normalize(&self, lambda: u64) -> u64 {
        if lambda < self.n + self.k {
            lambda
        } else {
            self.n + (lambda - self.n) % self.k
        }
    }

    pub fn element(&self, lambda: u64) -> CnkElement {
        CnkElement { monoid: *self, coefficient: self.normalize(lambda) }
    }

    /// `λa ≤ μa`, i.e. `λa + νa = μa` for some `ν ≥ 0`.
    ///
    /// Past `n` every class is periodic, so anything at or beyond `n` is
    /// reachable from every smaller or equal class and from itself.
    pub fn leq(&self, lambda: u64, mu: u64) -> bool {
        let (l, m) = (self.normalize(lambda), self.normalize(mu));
        m >= l || m >= self.n
    }

    /// Least `p ≥ 1` with `(p+1)a ≤ pa`.
    pub fn generating_number(&self) -> u64 {
        (1..).find(|&p| self.leq(p + 1, p)).expect("p = n always works")
    }
}

impl fmt::Display for Cnk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.n, self.k)
    }
}

impl fmt::Display for CnkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}a", self.coefficient)
    }
}

/// The monoid `M(n,k,l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mnkl {
    pub n: u64,
    pub k: u64,
    pub l: usize,
}

/// A written sum `βu + Σ α_i x_i + Σ γ_i y_i`. No normal form is applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MnklElement {
    pub u: u64,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

/// One of the defining relations, read in a fixed direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rewrite {
    /// `nσ → (n+k)σ`
    SigmaUp,
    /// `(n+k)σ → nσ`
    SigmaDown,
    /// `u → x_i + y_i` (1-based `i`)
    SplitU(usize),
    /// `x_i + y_i → u` (1-based `i`)
    MergeU(usize),
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rewrite::SigmaUp => write!(f, "n*sigma -> (n+k)*sigma"),
            Rewrite::SigmaDown => write!(f, "(n+k)*sigma -> n*sigma"),
            Rewrite::SplitU(i) => write!(f, "u -> x{i} + y{i}"),
            Rewrite::MergeU(i) => write!(f, "x{i} + y{i} -> u"),
        }
    }
}

/// Which homomorphism refutes `s ≤ t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Separator {
    /// `φ(s) ≤ φ(t)` fails in `C(n,k)`.
    Phi { phi_s: u64, phi_t: u64 },
    /// `φ(t) = 0` forces any `z` with `s + z = t` into the span of the
    /// `x_i`, where `ψ_j` is additive and non-negative, and
    /// `ψ_j(s) > ψ_j(t)`.
    PhiThenPsi { j: usize, psi_s: i64, psi_t: i64 },
}

impl fmt::Display for Separator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Separator::Phi { phi_s, phi_t } => {
                write!(f, "phi: phi(s) = {phi_s}a is not <= phi(t) = {phi_t}a")
            }
            Separator::PhiThenPsi { j, psi_s, psi_t } => write!(
                f,
                "phi(t) = 0 confines z to the x-span; psi{j}(s) = {psi_s} > psi{j}(t) = {psi_t}"
            ),
        }
    }
}

/// Verdict of [`Mnkl::leq`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LeqVerdict {
    /// `s + z = t`, certified by a chain of rewrites of `t` ending at a
    /// representative that dominates `s` coefficientwise.
    Yes { z: MnklElement, chain: Vec<(Rewrite, MnklElement)> },
    No(Separator),
    Unknown { depth: usize, visited: usize },
}

impl LeqVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, LeqVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, LeqVerdict::No(_))
    }
}

impl Mnkl {
    pub fn new(n: u64, k: u64, l: usize) -> Result<Mnkl> {
        if n == 0 || k == 0 || l == 0 {
            return Err(invalid(format!("M(n,k,l) needs n, k, l >= 1, got ({n}, {k}, {l})")));
        }
        Ok(Mnkl { n, k, l })
    }

    pub fn cnk(&self) -> Cnk {
        Cnk { n: self.n, k: self.k }
    }

    pub fn zero(&self) -> MnklElement {
        MnklElement { u: 0, x: vec![0; self.l], y: vec![0; self.l] }
    }

    pub fn u(&self) -> MnklElement {
        MnklElement { u: 1, ..self.zero() }
    }

    /// `x_i`, 1-based.
    pub fn x(&self, i: usize) -> Result<MnklElement> {
        self.check_index(i)?;
        let mut e = self.zero();
        e.x[i - 1] = 1;
        Ok(e)
    }

    /// `y_i`, 1-based.
    pub fn y(&self, i: usize) -> Result<MnklElement> {
        self.check_index(i)?;
        let mut e = self.zero();
        e.y[i - 1] = 1;
        Ok(e)
    }

    /// `σ = u + Σ x_i`.
    pub fn sigma(&self) -> MnklElement {
        MnklElement { u: 1, x: vec![1; self.l], y: vec![0; self.l] }
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.l {
            return Err(invalid(format!("index {j} out of range 1..={}", self.l)));
        }
        Ok(())
    }

    pub fn contains(&self, e: &MnklElement) -> bool {
        e.x.len() == self.l && e.y.len() == self.l
    }

    fn check(&self, e: &MnklElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(invalid(format!("element has {} x-coefficients, M has l = {}", e.x.len(), self.l)))
        }
    }

    pub fn phi(&self, e: &MnklElement) -> Result<CnkElement> {
        self.check(e)?;
        Ok(self.cnk().element(e.u + e.y.iter().sum::<u64>()))
    }

    /// `ψ_j`, 1-based `j`.
    pub fn psi(&self, e: &MnklElement, j: usize) -> Result<i64> {
        self.check(e)?;
        self.check_index(j)?;
        let ys: i64 = e.y.iter().map(|&c| c as i64).sum();
        Ok(-(e.u as i64) + e.x[j - 1] as i64 - ys - e.y[j - 1] as i64)
    }

    /// Looks for a separator refuting `s ≤ t`.
    pub fn separator(&self, s: &MnklElement, t: &MnklElement) -> Result<Option<Separator>> {
        let (ps, pt) = (self.phi(s)?, self.phi(t)?);
        if !self.cnk().leq(ps.coefficient, pt.coefficient) {
            return Ok(Some(Separator::Phi { phi_s: ps.coefficient, phi_t: pt.coefficient }));
        }
        if pt.coefficient == 0 {
            for j in 1..=self.l {
                let (a, b) = (self.psi(s, j)?, self.psi(t, j)?);
                if a > b {
                    return Ok(Some(Separator::PhiThenPsi { j, psi_s: a, psi_t: b }));
                }
            }
        }
        Ok(None)
    }

    /// Re-checks a separator against `s` and `t`.
    pub fn separator_holds(&self, sep: &Separator, s: &MnklElement, t: &MnklElement) -> Result<bool> {
        let (ps, pt) = (self.phi(s)?.coefficient, self.phi(t)?.coefficient);
        Ok(match *sep {
            Separator::Phi { phi_s, phi_t } => {
                phi_s == ps && phi_t == pt && !self.cnk().leq(ps, pt)
            }
            Separator::PhiThenPsi { j, psi_s, psi_t } => {
                pt == 0
                    && self.psi(s, j)? == psi_s
                    && self.psi(t, j)? == psi_t
                    && psi_s > psi_t
            }
        })
    }

    /// Applies one rewrite, or `None` when the left side is not present.
    pub fn apply(&self, e: &MnklElement, r: Rewrite) -> Option<MnklElement> {
        let mut out = e.clone();
        match r {
            Rewrite::SigmaUp | Rewrite::SigmaDown => {
                let (from, to) = if r == Rewrite::SigmaUp {
                    (self.n, self.n + self.k)
                } else {
                    (self.n + self.k, self.n)
                };
                if out.u < from || out.x.iter().any(|&c| c < from) {
                    return None;
                }
                out.u = out.u - from + to;
                for c in out.x.iter_mut() {
                    *c = *c - from + to;
                }
            }
            Rewrite::SplitU(i) => {
                if i == 0 || i > self.l || out.u == 0 {
                    return None;
                }
                out.u -= 1;
                out.x[i - 1] += 1;
                out.y[i - 1] += 1;
            }
            Rewrite::MergeU(i) => {
                if i == 0 || i > self.l || out.x[i - 1] == 0 || out.y[i - 1] == 0 {
                    return None;
                }
                out.u += 1;
                out.x[i - 1] -= 1;
                out.y[i - 1] -= 1;
            }
        }
        Some(out)
    }

    fn rewrites(&self) -> Vec<Rewrite> {
        let mut rs = vec![Rewrite::SigmaDown, Rewrite::SigmaUp];
        for i in 1..=self.l {
            rs.push(Rewrite::MergeU(i));
            rs.push(Rewrite::SplitU(i));
        }
        rs
    }

    /// Checks that `chain` rewrites `start` step by step.
    pub fn chain_holds(&self, start: &MnklElement, chain: &[(Rewrite, MnklElement)]) -> bool {
        let mut cur = start.clone();
        for (r, next) in chain {
            match self.apply(&cur, *r) {
                Some(e) if &e == next => cur = e,
                _ => return false,
            }
        }
        true
    }

    /// Decides `s ≤ t` where possible.
    ///
    /// Separators are tried first. Otherwise rewrites of `t` are explored
    /// breadth first, up to `depth` relation applications, until one
    /// dominates `s` coefficientwise.
    pub fn leq(&self, s: &MnklElement, t: &MnklElement, depth: usize) -> Result<LeqVerdict> {
        if let Some(sep) = self.separator(s, t)? {
            return Ok(LeqVerdict::No(sep));
        }
        let rewrites = self.rewrites();
        let mut parent: HashMap<MnklElement, Option<(Rewrite, MnklElement)>> = HashMap::new();
        parent.insert(t.clone(), None);
        let mut queue = VecDeque::from([(t.clone(), 0usize)]);
        while let Some((cur, d)) = queue.pop_front() {
            if let Some(z) = cur.minus(s) {
                let mut chain = Vec::new();
                let mut at = cur.clone();
                while let Some(Some((r, prev))) = parent.get(&at) {
                    chain.push((*r, at.clone()));
                    at = prev.clone();
                }
                chain.reverse();
                return Ok(LeqVerdict::Yes { z, chain });
            }
            if d == depth {
                continue;
            }
            for &r in &rewrites {
                if let Some(next) = self.apply(&cur, r) {
                    if parent.contains_key(&next) {
                        continue;
                    }
                    if parent.len() >= CLOSURE_STATE_LIMIT {
                        return Ok(LeqVerdict::Unknown { depth, visited: parent.len() });
                    }
                    parent.insert(next.clone(), Some((r, cur.clone())));
                    queue.push_back((next, d + 1));
                }
            }
        }
        Ok(LeqVerdict::Unknown { depth, visited: parent.len() })
    }

    /// `t ≤ λu` with the explicit complement: `z = Σ α_i y_i + Σ γ_i x_i`
    /// pairs every `x_i` and `y_i` into a copy of `u`.
    pub fn bound_by_u(&self, t: &MnklElement) -> Result<(u64, MnklElement)> {
        self.check(t)?;
        let lambda = t.u + t.x.iter().sum::<u64>() + t.y.iter().sum::<u64>();
        let z = MnklElement { u: 0, x: t.y.clone(), y: t.x.clone() };
        Ok((lambda, z))
    }

    /// Verifies a [`Mnkl::bound_by_u`] witness by merging every `x_i + y_i`.
    pub fn bound_by_u_holds(&self, t: &MnklElement, lambda: u64, z: &MnklElement) -> Result<bool> {
        self.check(t)?;
        self.check(z)?;
        let mut cur = t.add(z);
        for i in 1..=self.l {
            while let Some(next) = self.apply(&cur, Rewrite::MergeU(i)) {
                cur = next;
            }
        }
        Ok(cur == MnklElement { u: lambda, ..self.zero() })
    }

    pub fn parse_element(&self, s: &str) -> Result<MnklElement> {
        let e = MnklElement::from_str(s)?;
        if e.x.len() > self.l {
            return Err(parse_err(format!("'{s}' uses a generator beyond l = {}", self.l)));
        }
        let mut out = e;
        out.x.resize(self.l, 0);
        out.y.resize(self.l, 0);
        Ok(out)
    }
}

impl fmt::Display for Mnkl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{},{})", self.n, self.k, self.l)
    }
}

impl MnklElement {
    pub fn add(&self, other: &MnklElement) -> MnklElement {
        let zip = |a: &[u64], b: &[u64]| a.iter().zip(b).map(|(p, q)| p + q).collect();
        MnklElement { u: self.u + other.u, x: zip(&self.x, &other.x), y: zip(&self.y, &other.y) }
    }

    pub fn scale(&self, c: u64) -> MnklElement {
        MnklElement {
            u: self.u * c,
            x: self.x.iter().map(|v| v * c).collect(),
            y: self.y.iter().map(|v| v * c).collect(),
        }
    }

    /// Coefficientwise `self − other` when non-negative.
    pub fn minus(&self, other: &MnklElement) -> Option<MnklElement> {
        let sub = |a: &[u64], b: &[u64]| -> Option<Vec<u64>> {
            a.iter().zip(b).map(|(p, q)| p.checked_sub(*q)).collect()
        };
        Some(MnklElement {
            u: self.u.checked_sub(other.u)?,
            x: sub(&self.x, &other.x)?,
            y: sub(&self.y, &other.y)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0 && self.x.iter().all(|&c| c == 0) && self.y.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for MnklElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |c: u64, name: String| {
            if c == 1 {
                parts.push(name);
            } else if c > 1 {
                parts.push(format!("{c}*{name}"));
            }
        };
        push(self.u, "u".into());
        for (i, &c) in self.x.iter().enumerate() {
            push(c, format!("x{}", i + 1));
        }
        for (i, &c) in self.y.iter().enumerate() {
            push(c, format!("y{}", i + 1));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Splits "3*x1" or "3x1" or "x1" into coefficient and generator name.
fn split_term(term: &str) -> Result<(u64, &str)> {
    let term = term.trim();
    let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
    let (num, rest) = term.split_at(digits);
    let rest = rest.trim_start().trim_start_matches('*').trim();
    let c = if num.is_empty() {
        1
    } else {
        num.parse().map_err(|_| parse_err(format!("bad coefficient in '{term}'")))?
    };
    Ok((c, rest))
}

impl FromStr for MnklElement {
    type Err = Error;

    /// Sums like "u + 3*x1 + y2" or "0". Vectors are sized to the largest
    /// index mentioned.
    fn from_str(s: &str) -> Result<MnklElement> {
        let mut out = MnklElement { u: 0, x: Vec::new(), y: Vec::new() };
        for term in s.split('+') {
            let (c, name) = split_term(term)?;
            if name.is_empty() {
                if c == 0 {
                    continue;
                }
                return Err(parse_err(format!("constant term in '{s}'")));
            }
            if name == "u" {
                out.u += c;
                continue;
            }
            let (v, idx) = name.split_at(1);
            let i: usize = idx
                .parse()
                .ok()
                .filter(|&i| i >= 1)
                .ok_or_else(|| parse_err(format!("unknown generator '{name}'")))?;
            let vec = match v {
                "x" => &mut out.x,
                "y" => &mut out.y,
                _ => return Err(parse_err(format!("unknown generator '{name}'"))),
            };
            if vec.len() < i {
                vec.resize(i, 0);
            }
            vec[i - 1] += c;
        }
        let l = out.x.len().max(out.y.len());
        out.x.resize(l, 0);
        out.y.resize(l, 0);
        Ok(out)
    }
}

/// A parsed order question, e.g. "3*x1 <= 2*x1 in M(2,1,1)" or
/// "4a <= 3a in C(3,2)".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidQuery {
    Cnk { monoid: Cnk, lhs: u64, rhs: u64 },
    Mnkl { monoid: Mnkl, lhs: MnklElement, rhs: MnklElement },
}

fn parse_params(s: &str, head: &str, count: usize) -> Result<Vec<u64>> {
    let inner = s
        .trim()
        .strip_prefix(head)
        .and_then(|r| r.trim().strip_prefix('('))
        .and_then(|r| r.trim().strip_suffix(')'))
        .ok_or_else(|| parse_err(format!("expected {head}(...), got '{s}'")))?;
    let ps: Vec<u64> = inner
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| parse_err(format!("bad parameter '{p}'"))))
        .collect::<Result<_>>()?;
    if ps.len() != count {
        return Err(parse_err(format!("{head} takes {count} parameters")));
    }
    Ok(ps)
}

fn parse_cnk_side(s: &str) -> Result<u64> {
    let mut total = 0;
    for term in s.split('+') {
        let (c, name) = split_term(term)?;
        match name {
            "a" => total += c,
            "" if c == 0 => {}
            _ => return Err(parse_err(format!("C(n,k) has the single generator a, got '{term}'"))),
        }
    }
    Ok(total)
}

impl FromStr for MonoidQuery {
    type Err = Error;

    fn from_str(s: &str) -> Result<MonoidQuery> {
        let (relation, monoid) = s
            .rsplit_once(" in ")
            .ok_or_else(|| parse_err("expected '<lhs> <= <rhs> in <monoid>'"))?;
        let (lhs, rhs) = relation
            .split_once("<=")
            .ok_or_else(|| parse_err("expected '<='"))?;
        let monoid = monoid.trim();
        if monoid.starts_with("C") {
            let p = parse_params(monoid, "C", 2)?;
            let m = Cnk::new(p[0], p[1])?;
            Ok(MonoidQuery::Cnk { monoid: m, lhs: parse_cnk_side(lhs)?, rhs: parse_cnk_side(rhs)? })
        } else {
            let p = parse_params(monoid, "M", 3)?;
            let m = Mnkl::new(p[0], p[1], p[2] as usize)?;
            Ok(MonoidQuery::Mnkl { monoid: m, lhs: m.parse_element(lhs)?, rhs: m.parse_element(rhs)? })
        }
    }
}

//! Translation rings `T_G(X,R)`: `X × X` matrices over `R` with finite
//! propagation, i.e. `M(x,y) = 0` unless `y ∈ Kx` for a finite `K ⊆ G`.
//!
//! Elements are finite sums of terms `D_f A_g` (a diagonal times a shift),
//! possibly cut down by guards `[l·x ∈ X]` that products and transposes pick
//! up when `X` is a proper subset. A term contributes `f(x)` at `(x, g⁻¹x)`.

mod collapse;
mod compress;
mod right;
mod skew;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

pub use collapse::{collapse_matrices, CollapseReport, IdentityCheck};
pub use compress::{compress_certificate, CompressionReport, TranslationCertificate};
pub use right::{right_translation_iso, RightTerm, RightTranslationElement};
pub use skew::{finite_group_iso, skew_system, skew_to_matrix, SkewIsoReport, DEFAULT_ISO_ORDER_BOUND};

use crate::amenability::SubsetPredicate;
use crate::error::{parse_err, Error, Result};
use crate::groups::{FiniteSet, GroupDescriptor, GroupElement};
use crate::rings::{Elem, Ring, RingMatrix};

/// `f: G → R` equal to `default` outside a finite table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffFn {
    pub default: Elem,
    pub table: BTreeMap<GroupElement, Elem>,
}

impl CoeffFn {
    pub fn constant(c: Elem) -> CoeffFn {
        CoeffFn { default: c, table: BTreeMap::new() }
    }

    pub fn finite(ring: &Ring, table: BTreeMap<GroupElement, Elem>) -> CoeffFn {
        CoeffFn { default: ring.zero(), table }
    }

    pub fn eval(&self, x: &GroupElement) -> &Elem {
        self.table.get(x).unwrap_or(&self.default)
    }

    /// `x ↦ f(a·x)`.
    fn precompose(&self, g: &GroupDescriptor, a: &GroupElement) -> CoeffFn {
        let ai = g.inverse(a);
        CoeffFn {
            default: self.default.clone(),
            table: self.table.iter().map(|(t, v)| (g.mul(&ai, t), v.clone())).collect(),
        }
    }

    /// `x ↦ f(x⁻¹)`.
    fn invert_argument(&self, g: &GroupDescriptor) -> CoeffFn {
        CoeffFn {
            default: self.default.clone(),
            table: self.table.iter().map(|(t, v)| (g.inverse(t), v.clone())).collect(),
        }
    }

    fn combine(&self, other: &CoeffFn, op: impl Fn(&Elem, &Elem) -> Elem) -> CoeffFn {
        let mut table = BTreeMap::new();
        for t in self.table.keys().chain(other.table.keys()) {
            table.entry(t.clone()).or_insert_with(|| op(self.eval(t), other.eval(t)));
        }
        CoeffFn { default: op(&self.default, &other.default), table }
    }

    /// Drops table entries equal to the default.
    fn normalized(mut self) -> CoeffFn {
        let d = self.default.clone();
        self.table.retain(|_, v| *v != d);
        self
    }

    fn is_zero(&self, ring: &Ring) -> bool {
        ring.is_zero(&self.default) && self.table.values().all(|v| ring.is_zero(v))
    }
}

/// `D_f A_g` restricted to rows `x` with `l·x ∈ X` for every guard `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub shift: GroupElement,
    pub coeff: CoeffFn,
    pub guards: FiniteSet,
}

/// An element of `T_G(X,R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationElement {
    x: SubsetPredicate,
    ring: Ring,
    terms: Vec<Term>,
}

impl TranslationElement {
    pub fn from_terms(x: SubsetPredicate, ring: Ring, terms: Vec<Term>) -> Result<TranslationElement> {
        let g = x.group().clone();
        for t in &terms {
            g.check(&t.shift)?;
            for l in &t.guards {
                g.check(l)?;
            }
            for p in t.coeff.table.keys() {
                g.check(p)?;
            }
            let values = std::iter::once(&t.coeff.default).chain(t.coeff.table.values());
            if let Some(v) = values.into_iter().find(|v| !ring.contains(v)) {
                return Err(Error::RingMismatch { expected: ring.to_string(), found: format!("{v:?}") });
            }
        }
        Ok(TranslationElement { x, ring, terms }.simplified())
    }

    pub fn zero(x: SubsetPredicate, ring: Ring) -> TranslationElement {
        TranslationElement { x, ring, terms: Vec::new() }
    }

    pub fn identity(x: SubsetPredicate, ring: Ring) -> TranslationElement {
        let one = ring.one();
        let id = x.group().identity();
        TranslationElement::term(x, ring, id, CoeffFn::constant(one))
    }

    pub fn term(x: SubsetPredicate, ring: Ring, shift: GroupElement, coeff: CoeffFn) -> TranslationElement {
        TranslationElement { x, ring, terms: vec![Term { shift, coeff, guards: FiniteSet::new() }] }.simplified()
    }

    /// `A_g`: ones at `(x, g⁻¹x)`.
    pub fn shift(x: SubsetPredicate, ring: Ring, g: GroupElement) -> TranslationElement {
        let one = ring.one();
        TranslationElement::term(x, ring, g, CoeffFn::constant(one))
    }

    /// `D_f`.
    pub fn diagonal(x: SubsetPredicate, ring: Ring, f: CoeffFn) -> TranslationElement {
        let id = x.group().identity();
        TranslationElement::term(x, ring, id, f)
    }

    pub fn subset(&self) -> &SubsetPredicate {
        &self.x
    }

    pub fn group(&self) -> &GroupDescriptor {
        self.x.group()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Shifts carrying nonzero terms: `M(x,y) = 0` unless `y ∈ Kx` with `K`
    /// the inverses of these.
    pub fn shifts(&self) -> FiniteSet {
        self.terms.iter().map(|t| t.shift.clone()).collect()
    }

    /// `{h : M(x,y) ≠ 0 ⇒ y = h·x}`, i.e. the inverse shifts.
    pub fn propagation(&self) -> FiniteSet {
        self.terms.iter().map(|t| self.group().inverse(&t.shift)).collect()
    }

    fn guards_hold(&self, t: &Term, x: &GroupElement) -> bool {
        t.guards.iter().all(|l| self.x.contains(&self.group().mul(l, x)))
    }

    /// `M(x,y)`.
    pub fn entry(&self, x: &GroupElement, y: &GroupElement) -> Result<Elem> {
        for p in [x, y] {
            if !self.x.contains(p) {
                return Err(Error::InvalidArgument(format!(
                    "{} is not in {}",
                    self.group().format_element(p),
                    self.x
                )));
            }
        }
        let g = self.group();
        let mut acc = self.ring.zero();
        for t in &self.terms {
            if g.mul(&g.inverse(&t.shift), x) == *y && self.guards_hold(t, x) {
                acc = self.ring.add(&acc, t.coeff.eval(x));
            }
        }
        Ok(acc)
    }

    /// The `rows × cols` slice of `M`; indices outside `X` are refused.
    pub fn window(&self, rows: &[GroupElement], cols: &[GroupElement]) -> Result<RingMatrix> {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for x in rows {
            for y in cols {
                entries.push(self.entry(x, y)?);
            }
        }
        RingMatrix::new(self.ring.clone(), rows.len(), cols.len(), entries)
    }

    fn check_compatible(&self, other: &TranslationElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { expected: self.ring.to_string(), found: other.ring.to_string() });
        }
        if self.x != other.x {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.x, other.x)));
        }
        Ok(())
    }

    /// Merges terms with equal shift and guards, drops identity guards (and
    /// all guards when `X = G`) and zero terms.
    fn simplified(mut self) -> TranslationElement {
        let id = self.group().identity();
        let whole = matches!(self.x.rule(), crate::amenability::SubsetRule::WholeGroup);
        let mut merged: BTreeMap<(GroupElement, FiniteSet), CoeffFn> = BTreeMap::new();
        for mut t in std::mem::take(&mut self.terms) {
            t.guards.remove(&id);
            if whole {
                t.guards.clear();
            }
            let key = (t.shift, t.guards);
            let ring = &self.ring;
            match merged.remove(&key) {
                Some(f) => {
                    merged.insert(key, f.combine(&t.coeff, |a, b| ring.add(a, b)));
                }
                None => {
                    merged.insert(key, t.coeff);
                }
            }
        }
        self.terms = merged
            .into_iter()
            .map(|((shift, guards), coeff)| Term { shift, coeff: coeff.normalized(), guards })
            .filter(|t| !t.coeff.is_zero(&self.ring))
            .collect();
        self
    }

    pub fn add(&self, other: &TranslationElement) -> Result<TranslationElement> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(TranslationElement { x: self.x.clone(), ring: self.ring.clone(), terms }.simplified())
    }

    pub fn neg(&self) -> TranslationElement {
        let ring = &self.ring;
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                shift: t.shift.clone(),
                coeff: CoeffFn {
                    default: ring.neg(&t.coeff.default),
                    table: t.coeff.table.iter().map(|(k, v)| (k.clone(), ring.neg(v))).collect(),
                },
                guards: t.guards.clone(),
            })
            .collect();
        TranslationElement { x: self.x.clone(), ring: ring.clone(), terms }
    }

    pub fn sub(&self, other: &TranslationElement) -> Result<TranslationElement> {
        self.add(&other.neg())
    }

    /// Term-by-term product. `(f, g, G₁)·(h, k, G₂)` contributes
    /// `f(x)·h(g⁻¹x)` at `(x, (gk)⁻¹x)` when `g⁻¹x ∈ X` and the guards of
    /// both factors hold at `x` and `g⁻¹x` respectively.
    pub fn mul(&self, other: &TranslationElement) -> Result<TranslationElement> {
        self.check_compatible(other)?;
        let g = self.group();
        let ring = &self.ring;
        let mut terms = Vec::new();
        for s in &self.terms {
            let gi = g.inverse(&s.shift);
            for t in &other.terms {
                let mut guards = s.guards.clone();
                guards.insert(gi.clone());
                guards.extend(t.guards.iter().map(|l| g.mul(l, &gi)));
                let h = t.coeff.precompose(g, &gi);
                terms.push(Term {
                    shift: g.mul(&s.shift, &t.shift),
                    coeff: s.coeff.combine(&h, |a, b| ring.mul(a, b)),
                    guards,
                });
            }
        }
        Ok(TranslationElement { x: self.x.clone(), ring: ring.clone(), terms }.simplified())
    }

    /// `Mᵗ(x,y) = M(y,x)`. A term `(f, g)` becomes `(x ↦ f(gx), g⁻¹)` guarded by
    /// `gx ∈ X`.
    pub fn transpose(&self) -> TranslationElement {
        let g = self.group();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut guards: FiniteSet = t.guards.iter().map(|l| g.mul(l, &t.shift)).collect();
                guards.insert(t.shift.clone());
                Term { shift: g.inverse(&t.shift), coeff: t.coeff.precompose(g, &t.shift), guards }
            })
            .collect();
        TranslationElement { x: self.x.clone(), ring: self.ring.clone(), terms }.simplified()
    }

    /// Entrywise comparison on `window × window`.
    pub fn agrees_on(&self, other: &TranslationElement, window: &[GroupElement]) -> Result<bool> {
        self.check_compatible(other)?;
        for x in window.iter().filter(|p| self.x.contains(p)) {
            for y in window.iter().filter(|p| self.x.contains(p)) {
                if self.entry(x, y)? != other.entry(x, y)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let g = self.group();
        let r = &self.ring;
        Value::Array(
            self.terms
                .iter()
                .map(|t| {
                    json!({
                        "shift": g.format_element(&t.shift),
                        "default": r.format_elem(&t.coeff.default),
                        "table": t.coeff.table.iter()
                            .map(|(p, v)| json!([g.format_element(p), r.format_elem(v)]))
                            .collect::<Vec<_>>(),
                        "guards": t.guards.iter().map(|l| g.format_element(l)).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }

    /// Reads a list of `{shift, default, table?, guards?}` objects.
    pub fn from_json(x: &SubsetPredicate, ring: &Ring, v: &Value) -> Result<TranslationElement> {
        let g = x.group();
        let text = |v: &Value, what: &str| -> Result<String> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(parse_err(format!("{what} must be a string"))),
            }
        };
        let arr = v.as_array().ok_or_else(|| parse_err("a translation element is a list of terms"))?;
        let mut terms = Vec::new();
        for t in arr {
            let shift = g.parse_element(&text(&t["shift"], "shift")?)?;
            let default = match &t["default"] {
                Value::Null => ring.zero(),
                d => ring.parse_elem(&text(d, "default")?)?,
            };
            let mut table = BTreeMap::new();
            if let Some(rows) = t["table"].as_array() {
                for row in rows {
                    match row.as_array().map(Vec::as_slice) {
                        Some([p, val]) => {
                            table.insert(g.parse_element(&text(p, "table key")?)?, ring.parse_elem(&text(val, "table value")?)?);
                        }
                        _ => return Err(parse_err("table rows are [element, value] pairs")),
                    }
                }
            }
            let mut guards = FiniteSet::new();
            if let Some(ls) = t["guards"].as_array() {
                for l in ls {
                    guards.insert(g.parse_element(&text(l, "guard")?)?);
                }
            }
            terms.push(Term { shift, coeff: CoeffFn { default, table }, guards });
        }
        TranslationElement::from_terms(x.clone(), ring.clone(), terms)
    }
}

impl fmt::Display for TranslationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let g = self.group();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = format!("D[{}", self.ring.format_elem(&t.coeff.default));
                for (p, v) in &t.coeff.table {
                    s.push_str(&format!("; {} -> {}", g.format_element(p), self.ring.format_elem(v)));
                }
                s.push_str(&format!("] A[{}]", g.format_element(&t.shift)));
                if !t.guards.is_empty() {
                    s.push_str(&format!(" if {} x in X", g.format_set(&t.guards)));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests;

//! Right translation rings `T^r_G(X,R)` (`M(x,y) = 0` unless `y ∈ xK`) and
//! their identification with `T_G(X⁻¹,R)` via `M*(x⁻¹, y⁻¹) = M(x,y)`.

use super::{CoeffFn, Term, TranslationElement};
use crate::amenability::SubsetPredicate;
use crate::error::{Error, Result};
use crate::groups::{FiniteSet, GroupDescriptor, GroupElement};
use crate::rings::{Elem, Ring};

/// Contributes `f(x)` at `(x, x·g)` when `x·r ∈ X` for every guard `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightTerm {
    pub shift: GroupElement,
    pub coeff: CoeffFn,
    pub guards: FiniteSet,
}

/// An element of `T^r_G(X,R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightTranslationElement {
    x: SubsetPredicate,
    ring: Ring,
    terms: Vec<RightTerm>,
}

impl RightTranslationElement {
    pub fn new(x: SubsetPredicate, ring: Ring, terms: Vec<RightTerm>) -> Result<RightTranslationElement> {
        let g = x.group();
        for t in &terms {
            g.check(&t.shift)?;
            for p in t.guards.iter().chain(t.coeff.table.keys()) {
                g.check(p)?;
            }
        }
        Ok(RightTranslationElement { x, ring, terms })
    }

    pub fn identity(x: SubsetPredicate, ring: Ring) -> RightTranslationElement {
        let id = x.group().identity();
        let term = RightTerm { shift: id, coeff: CoeffFn::constant(ring.one()), guards: FiniteSet::new() };
        RightTranslationElement { x, ring, terms: vec![term] }
    }

    /// Ones at `(x, x·g)`.
    pub fn shift(x: SubsetPredicate, ring: Ring, g: GroupElement) -> RightTranslationElement {
        let term = RightTerm { shift: g, coeff: CoeffFn::constant(ring.one()), guards: FiniteSet::new() };
        RightTranslationElement { x, ring, terms: vec![term] }
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

    pub fn terms(&self) -> &[RightTerm] {
        &self.terms
    }

    pub fn entry(&self, x: &GroupElement, y: &GroupElement) -> Result<Elem> {
        let g = self.group();
        for p in [x, y] {
            if !self.x.contains(p) {
                return Err(Error::InvalidArgument(format!("{} is not in {}", g.format_element(p), self.x)));
            }
        }
        let mut acc = self.ring.zero();
        for t in &self.terms {
            if g.mul(x, &t.shift) == *y && t.guards.iter().all(|r| self.x.contains(&g.mul(x, r))) {
                acc = self.ring.add(&acc, t.coeff.eval(x));
            }
        }
        Ok(acc)
    }

    /// The inverse of [`right_translation_iso`].
    pub fn from_left(m: &TranslationElement) -> RightTranslationElement {
        let g = m.group();
        let terms = m
            .terms()
            .iter()
            .map(|t| RightTerm {
                shift: t.shift.clone(),
                coeff: t.coeff.invert_argument(g),
                guards: t.guards.iter().map(|l| g.inverse(l)).collect(),
            })
            .collect();
        RightTranslationElement { x: m.subset().inverted(), ring: m.ring().clone(), terms }
    }

    /// Product transported through the isomorphism with `T_G(X⁻¹,R)`.
    pub fn mul(&self, other: &RightTranslationElement) -> Result<RightTranslationElement> {
        let p = right_translation_iso(self)?.mul(&right_translation_iso(other)?)?;
        Ok(RightTranslationElement::from_left(&p))
    }
}

/// `M ↦ M*` with `M*(x⁻¹, y⁻¹) = M(x,y)`, landing in `T_G(X⁻¹,R)`.
///
/// A right term `f(x)` at `(x, xg)` becomes the left term `x' ↦ f(x'⁻¹)` at
/// `(x', g⁻¹x')`, and a guard `x·r ∈ X` becomes `r⁻¹·x' ∈ X⁻¹`.
pub fn right_translation_iso(m: &RightTranslationElement) -> Result<TranslationElement> {
    let g = m.group();
    let terms = m
        .terms
        .iter()
        .map(|t| Term {
            shift: t.shift.clone(),
            coeff: t.coeff.invert_argument(g),
            guards: t.guards.iter().map(|r| g.inverse(r)).collect(),
        })
        .collect();
    TranslationElement::from_terms(m.x.inverted(), m.ring.clone(), terms)
}

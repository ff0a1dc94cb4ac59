//! Bounded search for `1 ∈ R_g R_{g⁻¹}` from finite spanning sets.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::crossed::CrossedSystem;
use super::linear::solve;
use crate::algebras::leavitt::LeavittAlgebra;
use crate::error::{Error, Result};
use crate::groups::{GroupDescriptor, GroupElement};
use crate::rings::{Elem, Ring};

/// Default bound on the integer coefficients of a witness.
pub const DEFAULT_COEFF_BOUND: u32 = 3;

/// A graded ring described by finite spanning sets of (some of) its
/// homogeneous components over the base ring.
#[derive(Clone, Debug)]
pub struct GradedSpans {
    pub ring: Ring,
    pub group: GroupDescriptor,
    pub spans: BTreeMap<GroupElement, Vec<Elem>>,
}

/// `1 = Σ c · spans[g][i] · spans[g⁻¹][j]` with listed `(i, j, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongWitness {
    pub terms: Vec<(usize, usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongGradingEntry {
    pub g: GroupElement,
    pub witness: Option<StrongWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongGradingReport {
    pub bound: u32,
    pub entries: Vec<StrongGradingEntry>,
}

impl StrongGradingReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.witness.is_some())
    }
}

impl GradedSpans {
    pub fn new(ring: Ring, group: GroupDescriptor) -> GradedSpans {
        GradedSpans { ring, group, spans: BTreeMap::new() }
    }

    pub fn with(mut self, g: GroupElement, span: Vec<Elem>) -> GradedSpans {
        self.spans.insert(g, span);
        self
    }

    /// Components `R·g` of a crossed product, spanned by `1·g`.
    pub fn crossed(cs: &CrossedSystem) -> GradedSpans {
        let ring = Ring::Crossed(cs.clone().into());
        let mut out = GradedSpans::new(ring, cs.group().clone());
        for (i, g) in cs.elements().iter().enumerate() {
            out.spans.insert(g.clone(), vec![Elem::Crossed(cs.term(i, cs.base().one()))]);
        }
        out
    }

    /// Components of degree `-1, 0, 1` of a Leavitt algebra with its
    /// `Z`-grading: `e_i`, the `e_i e_j*`, and `e_i*`.
    pub fn leavitt(alg: &LeavittAlgebra) -> GradedSpans {
        let n = alg.n() as u8;
        let ring = Ring::Leavitt(alg.clone().into());
        let z = GroupDescriptor::FreeAbelian(1);
        let wrap = |x| Elem::Leavitt(x);
        let zero = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).map(|(i, j)| wrap(alg.monomial(&[i], &[j])));
        let mut spans: Vec<Elem> = vec![wrap(alg.scalar(alg.base().one()))];
        spans.extend(zero);
        GradedSpans::new(ring, z.clone())
            .with(z.int(1), (1..=n).map(|i| wrap(alg.e(i))).collect())
            .with(z.int(0), spans)
            .with(z.int(-1), (1..=n).map(|i| wrap(alg.e_star(i))).collect())
    }
}

/// For each `g`, looks for integer coefficients `|c| ≤ bound` with
/// `1 = Σ c s_i t_j`, `s_i` spanning `R_g` and `t_j` spanning `R_{g⁻¹}`.
///
/// The linear system is solved exactly over `Q` on ring coordinates; a
/// solution is accepted only if its coefficients are bounded integers and
/// the sum recomputed in the ring equals `1`.
pub fn strong_grading_check(data: &GradedSpans, gs: &[GroupElement], bound: u32) -> Result<StrongGradingReport> {
    let mut entries = Vec::new();
    for g in gs {
        data.group.check(g)?;
        let inv = data.group.inverse(g);
        let missing = |h: &GroupElement| Error::Precondition(format!("no spanning set for degree {}", data.group.format_element(h)));
        let s = data.spans.get(g).ok_or_else(|| missing(g))?;
        let t = data.spans.get(&inv).ok_or_else(|| missing(&inv))?;
        let witness = search(&data.ring, s, t, bound);
        entries.push(StrongGradingEntry { g: g.clone(), witness });
    }
    Ok(StrongGradingReport { bound, entries })
}

fn search(ring: &Ring, s: &[Elem], t: &[Elem], bound: u32) -> Option<StrongWitness> {
    let mut products = Vec::new();
    let mut seen = Vec::new();
    for (i, a) in s.iter().enumerate() {
        for (j, b) in t.iter().enumerate() {
            let p = ring.mul(a, b);
            if ring.is_zero(&p) || seen.contains(&p) {
                continue;
            }
            seen.push(p.clone());
            products.push((i, j, p));
        }
    }
    let columns: Vec<_> = products.iter().map(|(_, _, p)| ring.coordinates(p)).collect();
    let sol = solve(&columns, &ring.coordinates(&ring.one()))?;
    let mut terms = Vec::new();
    let mut total = ring.zero();
    for ((i, j, p), c) in products.iter().zip(sol) {
        if c.is_zero() {
            continue;
        }
        if !c.is_integer() || c.numer().abs() > BigInt::from(bound) {
            return None;
        }
        let c = c.numer().to_i64()?;
        total = ring.add(&total, &ring.mul(&ring.from_int(c), p));
        terms.push((*i, *j, c));
    }
    ring.is_one(&total).then_some(StrongWitness { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_rings_are_strongly_graded() {
        let g = GroupDescriptor::Cyclic(3);
        let cs = CrossedSystem::group_ring(Ring::Integers, g.clone()).unwrap();
        let data = GradedSpans::crossed(&cs);
        let rep = strong_grading_check(&data, &g.elements().unwrap(), DEFAULT_COEFF_BOUND).unwrap();
        assert!(rep.passed());
        assert!(rep.entries.iter().all(|e| e.witness.as_ref().unwrap().terms == vec![(0, 0, 1)]));
    }

    #[test]
    fn leavitt_degree_one() {
        let alg = LeavittAlgebra::new(3, Ring::Integers).unwrap();
        let data = GradedSpans::leavitt(&alg);
        let z = GroupDescriptor::FreeAbelian(1);
        let rep = strong_grading_check(&data, &[z.int(1), z.int(-1), z.int(0)], 3).unwrap();
        let w = rep.entries[0].witness.as_ref().unwrap();
        assert_eq!(w.terms, vec![(0, 0, 1), (1, 1, 1), (2, 2, 1)]);
        // e_i* e_j = δ_ij, so 1 = e_1* e_1 in degree -1
        assert_eq!(rep.entries[1].witness.as_ref().unwrap().terms, vec![(0, 0, 1)]);
        assert!(rep.passed());
        assert!(strong_grading_check(&data, &[z.int(2)], 3).is_err());
    }

    #[test]
    fn missing_unit_is_not_found() {
        // degree-1 part of Z[t] spanned by 2t, degree -1 by t⁻¹: only 2 ∈ R_1 R_{-1}
        let z = GroupDescriptor::FreeAbelian(1);
        let data = GradedSpans::new(Ring::Integers, z.clone())
            .with(z.int(1), vec![Elem::int(2)])
            .with(z.int(-1), vec![Elem::int(1)]);
        let rep = strong_grading_check(&data, &[z.int(1)], 3).unwrap();
        assert!(!rep.passed());
    }
}

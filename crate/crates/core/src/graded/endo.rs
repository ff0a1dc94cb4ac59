//! The `G`-grading on `M_{nl}(S) ≅ End_S(⊕_g A_g)` with `A_1 = S^p` and
//! `A_g = S` otherwise, `p = nl - |G| + 1`.
//!
//! Rows and columns are split into blocks, one per group element. The
//! component `T_g` consists of matrices supported on blocks `(x, g⁻¹x)`.

use std::collections::BTreeMap;

use super::strong::{strong_grading_check, GradedSpans, StrongGradingReport, DEFAULT_COEFF_BOUND};
use crate::error::{Error, Result};
use crate::groups::{GroupDescriptor, GroupElement};
use crate::rings::{Elem, Ring};

/// Largest total matrix size handled; closure checks are quartic in it.
pub const MAX_ENDO_SIZE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoGradedRing {
    s: Ring,
    group: GroupDescriptor,
    /// Group elements, identity first; block `b` belongs to `elements[b]`.
    elements: Vec<GroupElement>,
    ranks: Vec<usize>,
    offsets: Vec<usize>,
    p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoGradedReport {
    pub p: usize,
    pub size: usize,
    /// `dim_S T_g` for each `g`, in element order.
    pub component_dims: Vec<usize>,
    /// Every matrix unit is homogeneous, the dimensions add up to `size²`,
    /// and `E_ab E_cd = δ_bc E_ad`, `Σ E_aa = 1` hold in `T`.
    pub matrix_units_ok: bool,
    pub closure_pairs: usize,
    pub closure_failures: Vec<String>,
    pub strong: StrongGradingReport,
    /// `T_1 → M_p(S) × S^{k-1}` by diagonal blocks is bijective on bases,
    /// multiplicative on all pairs of basis elements and unital.
    pub base_decomposition_ok: bool,
}

impl EndoGradedReport {
    pub fn passed(&self) -> bool {
        self.matrix_units_ok && self.closure_failures.is_empty() && self.strong.passed() && self.base_decomposition_ok
    }
}

impl EndoGradedRing {
    pub fn new(s: Ring, group: GroupDescriptor, n: usize, l: usize) -> Result<EndoGradedRing> {
        let elements = group.elements()?;
        let k = elements.len();
        if k < 2 {
            return Err(Error::InvalidArgument(format!("the group must have at least 2 elements, {group} has {k}")));
        }
        if n * l < k {
            return Err(Error::InvalidArgument(format!("need nl > |G| - 1, got nl = {} and |G| = {k}", n * l)));
        }
        if n * l > MAX_ENDO_SIZE {
            return Err(Error::BoundExceeded(format!("nl = {} exceeds {MAX_ENDO_SIZE}", n * l)));
        }
        let p = n * l - k + 1;
        let ranks: Vec<usize> = (0..k).map(|i| if i == 0 { p } else { 1 }).collect();
        let offsets = ranks.iter().scan(0, |acc, r| {
            let o = *acc;
            *acc += r;
            Some(o)
        });
        Ok(EndoGradedRing { offsets: offsets.collect(), s, group, elements, ranks, p })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn size(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn base(&self) -> &Ring {
        &self.s
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `M_N(S)` with `N` the total rank.
    pub fn ring(&self) -> Ring {
        Ring::matrix(self.s.clone(), self.size())
    }

    fn block_of(&self, a: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= a).expect("offsets start at 0")
    }

    fn index_of(&self, g: &GroupElement) -> usize {
        self.elements.iter().position(|e| e == g).expect("element of the group")
    }

    /// Degree of the matrix unit `E_ab`: `x y⁻¹` for blocks `x ∋ a`, `y ∋ b`.
    pub fn unit_degree(&self, a: usize, b: usize) -> usize {
        let x = &self.elements[self.block_of(a)];
        let y = &self.elements[self.block_of(b)];
        self.index_of(&self.group.mul(x, &self.group.inverse(y)))
    }

    pub fn matrix_unit(&self, a: usize, b: usize) -> Elem {
        let n = self.size();
        let mut es = vec![self.s.zero(); n * n];
        es[a * n + b] = self.s.one();
        Elem::Matrix(es)
    }

    /// Matrix units spanning `T_g` (`g` by index).
    pub fn component_units(&self, g: usize) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.unit_degree(a, b) == g).collect()
    }

    /// The degree of a nonzero homogeneous element, `None` otherwise.
    pub fn degree(&self, x: &Elem) -> Option<usize> {
        let Elem::Matrix(es) = x else { return None };
        let n = self.size();
        let mut deg = None;
        for (i, e) in es.iter().enumerate() {
            if self.s.is_zero(e) {
                continue;
            }
            let d = self.unit_degree(i / n, i % n);
            if deg.is_some_and(|d0| d0 != d) {
                return None;
            }
            deg = Some(d);
        }
        deg
    }

    pub fn spans(&self) -> GradedSpans {
        let mut out = GradedSpans::new(self.ring(), self.group.clone());
        for (g, e) in self.elements.iter().enumerate() {
            let units = self.component_units(g).into_iter().map(|(a, b)| self.matrix_unit(a, b)).collect();
            out.spans.insert(e.clone(), units);
        }
        out
    }

    /// `M_p(S) × S × ... × S`, with `M_1(S)` written as `S`.
    pub fn base_decomposition_ring(&self) -> Ring {
        let first = if self.p == 1 { self.s.clone() } else { Ring::matrix(self.s.clone(), self.p) };
        let mut factors = vec![first];
        factors.extend(std::iter::repeat(self.s.clone()).take(self.elements.len() - 1));
        Ring::Product(factors)
    }

    /// Diagonal blocks of an element of `T_1`.
    pub fn diagonal_blocks(&self, x: &Elem) -> Elem {
        let Elem::Matrix(es) = x else { panic!("elements of T are matrices") };
        let n = self.size();
        let mut parts = Vec::new();
        for (b, (&o, &r)) in self.offsets.iter().zip(&self.ranks).enumerate() {
            let block: Vec<Elem> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| es[(o + i) * n + o + j].clone()).collect();
            parts.push(if b == 0 && self.p > 1 { Elem::Matrix(block) } else { block.into_iter().next().expect("rank 1 block") });
        }
        Elem::Tuple(parts)
    }

    /// Runs every structural check.
    pub fn verify(&self) -> Result<EndoGradedReport> {
        let t = self.ring();
        let n = self.size();
        let k = self.elements.len();
        let component_dims: Vec<usize> = (0..k).map(|g| self.component_units(g).len()).collect();

        let units: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let mut matrix_units_ok = component_dims.iter().sum::<usize>() == n * n;
        let mut diag = t.zero();
        for &(a, b) in &units {
            let e = self.matrix_unit(a, b);
            matrix_units_ok &= self.degree(&e) == Some(self.unit_degree(a, b));
            if a == b {
                diag = t.add(&diag, &e);
            }
        }
        matrix_units_ok &= t.is_one(&diag);

        let mut closure_failures = Vec::new();
        let mut closure_pairs = 0;
        for &(a, b) in &units {
            let (g, u) = (self.unit_degree(a, b), self.matrix_unit(a, b));
            for &(c, d) in &units {
                let (h, v) = (self.unit_degree(c, d), self.matrix_unit(c, d));
                let prod = t.mul(&u, &v);
                closure_pairs += 1;
                let expected = if b == c { self.matrix_unit(a, d) } else { t.zero() };
                matrix_units_ok &= prod == expected;
                let gh = self.index_of(&self.group.mul(&self.elements[g], &self.elements[h]));
                if !t.is_zero(&prod) && self.degree(&prod) != Some(gh) {
                    closure_failures.push(format!("E{a}{b} * E{c}{d} leaves T_gh"));
                }
            }
        }

        let strong = strong_grading_check(&self.spans(), &self.elements, DEFAULT_COEFF_BOUND)?;
        let base_decomposition_ok = self.check_base_decomposition();
        Ok(EndoGradedReport {
            p: self.p,
            size: n,
            component_dims,
            matrix_units_ok,
            closure_pairs,
            closure_failures,
            strong,
            base_decomposition_ok,
        })
    }

    fn check_base_decomposition(&self) -> bool {
        let t = self.ring();
        let target = self.base_decomposition_ring();
        let basis: Vec<Elem> = self.component_units(0).into_iter().map(|(a, b)| self.matrix_unit(a, b)).collect();
        let images: Vec<Elem> = basis.iter().map(|x| self.diagonal_blocks(x)).collect();
        // images of distinct units are distinct basis vectors, and there are
        // as many as dim(M_p(S) × S^{k-1})
        let mut coords = BTreeMap::new();
        for img in &images {
            match target.coordinates(img).as_slice() {
                [(key, v)] if v == &num_rational::BigRational::from_integer(1.into()) => {
                    coords.insert(key.clone(), ());
                }
                _ => return false,
            }
        }
        if coords.len() != images.len() || images.len() != self.p * self.p + self.elements.len() - 1 {
            return false;
        }
        if !target.is_one(&self.diagonal_blocks(&t.one())) {
            return false;
        }
        basis.iter().zip(&images).all(|(x, fx)| {
            basis.iter().zip(&images).all(|(y, fy)| self.diagonal_blocks(&t.mul(x, y)) == target.mul(fx, fy))
        })
    }
}

/// Builds the graded ring for `(S, G, n, l)` and runs all checks.
pub fn endo_graded_construction(s: Ring, group: GroupDescriptor, n: usize, l: usize) -> Result<(EndoGradedRing, EndoGradedReport)> {
    let ring = EndoGradedRing::new(s, group, n, l)?;
    let report = ring.verify()?;
    Ok((ring, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_over_z5() {
        let s = Ring::integers_mod(5).unwrap();
        let (t, rep) = endo_graded_construction(s.clone(), GroupDescriptor::Cyclic(2), 2, 1).unwrap();
        assert_eq!((rep.p, rep.size), (1, 2));
        assert_eq!(t.ring(), Ring::matrix(s.clone(), 2));
        assert_eq!(t.base_decomposition_ring(), Ring::Product(vec![s.clone(), s]));
        assert_eq!(rep.component_dims, vec![2, 2]);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn cyclic_three_over_z() {
        let (t, rep) = endo_graded_construction(Ring::Integers, GroupDescriptor::Cyclic(3), 2, 2).unwrap();
        assert_eq!((rep.p, rep.size), (2, 4));
        // blocks of sizes 2, 1, 1: T_1 has 4 + 1 + 1 units, the others 2 + 1 + 2 each
        assert_eq!(rep.component_dims, vec![6, 5, 5]);
        assert_eq!(rep.closure_pairs, 256);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(t.degree(&t.ring().zero()), None);
        let mixed = t.ring().add(&t.matrix_unit(0, 0), &t.matrix_unit(0, 2));
        assert_eq!(t.degree(&mixed), None);
    }

    #[test]
    fn parameter_constraints() {
        assert!(EndoGradedRing::new(Ring::Integers, GroupDescriptor::Cyclic(3), 3, 1).is_ok());
        assert!(matches!(
            EndoGradedRing::new(Ring::Integers, GroupDescriptor::Cyclic(3), 2, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(EndoGradedRing::new(Ring::Integers, GroupDescriptor::Cyclic(1), 2, 1).is_err());
        assert!(EndoGradedRing::new(Ring::Integers, GroupDescriptor::FreeAbelian(1), 2, 1).is_err());
    }
}

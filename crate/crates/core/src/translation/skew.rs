//! For finite `G`, the skew group ring `(∏_G R) ∗ G` is isomorphic to the
//! `G × G` matrix ring over `R` via `f ↦ D_f`, `g ↦ A_g`.

use crate::error::{Error, Result};
use crate::graded::crossed::{Automorphism, CrossedElem, CrossedSystem};
use crate::groups::GroupDescriptor;
use crate::rings::{Elem, Ring, RingMatrix};

/// Groups larger than this are refused by default.
pub const DEFAULT_ISO_ORDER_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewIsoReport {
    pub group: String,
    pub ring: String,
    pub order: usize,
    /// Pairs of generators `(D_{e_x}` or `A_g)` checked.
    pub pairs_checked: usize,
    pub additive: bool,
    pub multiplicative: bool,
    pub unital: bool,
    /// `A_g D_f A_g⁻¹ = D_{g·f}` for every `g` and every indicator `f`.
    pub action_law: bool,
    /// The basis `e_x g` maps onto the matrix units bijectively.
    pub bijective: bool,
}

impl SkewIsoReport {
    pub fn passed(&self) -> bool {
        self.additive && self.multiplicative && self.unital && self.action_law && self.bijective
    }
}

/// The skew group ring with `(g·f)(x) = f(g⁻¹x)` on `∏_G R`.
pub fn skew_system(group: &GroupDescriptor, ring: &Ring) -> Result<CrossedSystem> {
    let elements = group.elements()?;
    let base = Ring::Product(vec![ring.clone(); elements.len()]);
    let index = |x: &crate::groups::GroupElement| elements.iter().position(|e| e == x).expect("finite group");
    let one = base.one();
    CrossedSystem::new(
        group.clone(),
        base,
        |g| {
            let gi = group.inverse(g);
            Automorphism::PermuteFactors(elements.iter().map(|x| index(&group.mul(&gi, x))).collect())
        },
        |_, _| one.clone(),
    )
}

/// `φ(Σ f_g g) = Σ D_{f_g} A_g`, with `A_g(x,y) = [y = g⁻¹x]`.
pub fn skew_to_matrix(cs: &CrossedSystem, ring: &Ring, e: &CrossedElem) -> RingMatrix {
    let n = cs.order();
    let mut out = RingMatrix::zeros(ring.clone(), n, n);
    for (&g, f) in e.terms() {
        let fs = match f {
            Elem::Tuple(fs) => fs,
            _ => unreachable!("coefficients live in the product ring"),
        };
        let gi = cs.inverse_index(g);
        for x in 0..n {
            let y = cs.mul_index(gi, x);
            let cur = out.get(x, y).clone();
            out.set(x, y, ring.add(&cur, &fs[x]));
        }
    }
    out
}

fn indicator(ring: &Ring, n: usize, x: usize) -> Elem {
    Elem::Tuple((0..n).map(|i| if i == x { ring.one() } else { ring.zero() }).collect())
}

/// Builds `φ` and checks it exhaustively on generator pairs.
pub fn finite_group_iso(group: &GroupDescriptor, ring: &Ring, bound: usize) -> Result<SkewIsoReport> {
    let order = group.order().ok_or_else(|| Error::InvalidArgument(format!("{group} is infinite")))? as usize;
    if order > bound {
        return Err(Error::BoundExceeded(format!("|G| = {order} exceeds {bound}")));
    }
    let cs = skew_system(group, ring)?;
    let base = cs.base().clone();
    let id = cs.identity_index();
    let phi = |e: &CrossedElem| skew_to_matrix(&cs, ring, e);

    let mut gens: Vec<CrossedElem> = (0..order).map(|x| cs.term(id, indicator(ring, order, x))).collect();
    gens.extend((0..order).map(|g| cs.term(g, base.one())));
    // A generic-looking coefficient so that additivity is not only tested on units.
    let mixed = Elem::Tuple((0..order).map(|i| ring.from_int(i as i64 + 2)).collect());
    gens.push(cs.add(&cs.term(id, mixed.clone()), &cs.term(order - 1, mixed)));

    let (mut additive, mut multiplicative) = (true, true);
    let mut pairs_checked = 0;
    for a in &gens {
        for b in &gens {
            pairs_checked += 1;
            additive &= phi(&cs.add(a, b)) == phi(a).add(&phi(b))?;
            multiplicative &= phi(&cs.mul(a, b)) == phi(a).mul(&phi(b))?;
        }
    }
    let unital = phi(&cs.scalar(base.one())).is_identity();

    let mut action_law = true;
    for g in 0..order {
        let ag = phi(&cs.term(g, base.one()));
        let ag_inv = phi(&cs.term(cs.inverse_index(g), base.one()));
        for x in 0..order {
            let f = indicator(ring, order, x);
            let lhs = ag.mul(&phi(&cs.term(id, f.clone())))?.mul(&ag_inv)?;
            let rhs = phi(&cs.term(id, cs.act(g, &f)));
            action_law &= lhs == rhs;
        }
    }

    // Each e_x g must go to a single matrix unit, and all n² units must appear.
    let mut seen = vec![false; order * order];
    let mut bijective = true;
    for g in 0..order {
        for x in 0..order {
            let m = phi(&cs.term(g, indicator(ring, order, x)));
            let nonzero: Vec<(usize, usize)> = (0..order)
                .flat_map(|i| (0..order).map(move |j| (i, j)))
                .filter(|&(i, j)| !ring.is_zero(m.get(i, j)))
                .collect();
            match nonzero.as_slice() {
                [(i, j)] if ring.is_one(m.get(*i, *j)) && !seen[i * order + j] => seen[i * order + j] = true,
                _ => bijective = false,
            }
        }
    }
    bijective &= seen.iter().all(|&s| s);

    Ok(SkewIsoReport {
        group: group.to_string(),
        ring: ring.to_string(),
        order,
        pairs_checked,
        additive,
        multiplicative,
        unital,
        action_law,
        bijective,
    })
}

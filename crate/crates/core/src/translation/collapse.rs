//! The matrices `M(x,y) = [y = α(x)]`, `N(x,y) = [y = β(x)]` built from a
//! two-to-one injection, and the identities making `T ⊕ T ≅ T`, checked on
//! the truncation `V × W`.

use std::collections::HashMap;

use crate::amenability::InjectionWitness;
use crate::error::{invalid, Result};
use crate::groups::{FiniteSet, GroupElement};
use crate::rings::{Ring, RingMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    /// First failing entry (0-based), if any.
    pub first_failure: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseReport {
    /// `V × W`.
    pub m: RingMatrix,
    pub n: RingMatrix,
    pub checks: Vec<IdentityCheck>,
    /// Elements of `W` outside `Im α ∪ Im β`; the projection identity is
    /// only the identity on the complement of these.
    pub uncovered: FiniteSet,
}

impl CollapseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn compare(name: &'static str, got: &RingMatrix, want: &RingMatrix) -> IdentityCheck {
    let mut first_failure = None;
    'outer: for i in 0..got.rows() {
        for j in 0..got.cols() {
            if got.get(i, j) != want.get(i, j) {
                first_failure = Some((i, j));
                break 'outer;
            }
        }
    }
    IdentityCheck { name, holds: first_failure.is_none(), first_failure }
}

/// Builds `M` and `N` over `ring` and checks `MMᵗ = I`, `NNᵗ = I`,
/// `MNᵗ = 0`, `NMᵗ = 0` and `MᵗM + NᵗN = P`, the diagonal projection onto
/// `Im α ∪ Im β`.
///
/// The witness is not required to be valid; a broken one shows up as failed
/// identities. Maps with missing entries or images outside `W` are refused.
pub fn collapse_matrices(w: &InjectionWitness, ring: &Ring) -> Result<CollapseReport> {
    let col: HashMap<&GroupElement, usize> = w.w.iter().enumerate().map(|(j, y)| (y, j)).collect();
    let (nv, nw) = (w.v.len(), w.w.len());
    let build = |map: &std::collections::BTreeMap<GroupElement, GroupElement>| -> Result<RingMatrix> {
        let mut m = RingMatrix::zeros(ring.clone(), nv, nw);
        for (i, x) in w.v.iter().enumerate() {
            let y = map.get(x).ok_or_else(|| invalid("the witness does not map every element of V"))?;
            let j = *col.get(y).ok_or_else(|| invalid("an image lies outside W"))?;
            m.set(i, j, ring.one());
        }
        Ok(m)
    };
    let m = build(&w.alpha)?;
    let n = build(&w.beta)?;
    let (mt, nt) = (m.transpose(), n.transpose());
    let id_v = RingMatrix::identity(ring.clone(), nv);
    let zero_v = RingMatrix::zeros(ring.clone(), nv, nv);
    let covered: FiniteSet = w.alpha.values().chain(w.beta.values()).cloned().collect();
    let projection = RingMatrix::from_fn(ring.clone(), nw, nw, |i, j| {
        if i == j && covered.contains(&w.w[i]) {
            ring.one()
        } else {
            ring.zero()
        }
    });
    let checks = vec![
        compare("M Mt = I", &m.mul(&mt)?, &id_v),
        compare("N Nt = I", &n.mul(&nt)?, &id_v),
        compare("M Nt = 0", &m.mul(&nt)?, &zero_v),
        compare("N Mt = 0", &n.mul(&mt)?, &zero_v),
        compare("Mt M + Nt N = P", &mt.mul(&m)?.add(&nt.mul(&n)?)?, &projection),
    ];
    let uncovered = w.w.iter().filter(|y| !covered.contains(y)).cloned().collect();
    Ok(CollapseReport { m, n, checks, uncovered })
}

//! The subsets `X = AB` and `X_0 = ⟨a^k⟩B` of `BS(1,k)`, and coset counting
//! for `gX` against finite tuples.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::groups::{GroupDescriptor, GroupElement, KAdic};

/// One inclusion or disjointness check with the number of instances tested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
}

impl BsCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsExampleReport {
    pub k: u32,
    pub radius: usize,
    pub ball_size: usize,
    pub checks: Vec<BsCheck>,
}

impl BsExampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(BsCheck::passed)
    }
}

fn t_of(x: &GroupElement) -> &KAdic {
    match x {
        GroupElement::BaumslagSolitar { t, .. } => t,
        _ => panic!("not a BS(1,k) element"),
    }
}

fn in_x(x: &GroupElement) -> bool {
    t_of(x).is_integer()
}

fn in_x0(x: &GroupElement) -> bool {
    t_of(x).is_multiple_of_base()
}

/// On the ball of radius `r` in `BS(1,k)`, checks
/// 1. `X_0 ⊆ X` and `aX_0 ⊆ X`,
/// 2. `X_0 ∩ aX_0 = ∅`,
/// 3. `b(X ∩ B_r) ⊆ X_0`, and every `y ∈ X_0 ∩ B_r` whose `b`-preimage lies
///    in the ball has that preimage in `X`.
pub fn bs_example_check(k: u32, r: usize) -> Result<BsExampleReport> {
    if k < 2 {
        return Err(invalid("BS(1,k) needs k >= 2"));
    }
    let g = GroupDescriptor::BaumslagSolitar(k);
    let ball = g.ball(r)?;
    let ball_set: std::collections::HashSet<&GroupElement> = ball.iter().collect();
    let (a, b) = (g.bs_a(), g.bs_b());
    let b_inv = g.inverse(&b);

    let mut inclusion = BsCheck { name: "X0 and aX0 inside X", checked: 0, failures: 0 };
    let mut disjoint = BsCheck { name: "X0 and aX0 disjoint", checked: 0, failures: 0 };
    let mut shift = BsCheck { name: "bX = X0", checked: 0, failures: 0 };
    for x in &ball {
        if in_x0(x) {
            let ax = g.mul(&a, x);
            inclusion.checked += 1;
            if !(in_x(x) && in_x(&ax)) {
                inclusion.failures += 1;
            }
            disjoint.checked += 1;
            if in_x0(&ax) {
                disjoint.failures += 1;
            }
            let pre = g.mul(&b_inv, x);
            if ball_set.contains(&pre) {
                shift.checked += 1;
                if !in_x(&pre) {
                    shift.failures += 1;
                }
            }
        }
        if in_x(x) {
            shift.checked += 1;
            if !in_x0(&g.mul(&b, x)) {
                shift.failures += 1;
            }
        }
    }
    Ok(BsExampleReport { k, radius: r, ball_size: ball.len(), checks: vec![inclusion, disjoint, shift] })
}

/// `g = (f, 0)` with `‖gX ∩ u‖ < ‖gX ∩ v‖`, where `‖·‖` counts tuple
/// entries with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RosenblattWitness {
    pub g: GroupElement,
    pub count_u: usize,
    pub count_v: usize,
}

impl RosenblattWitness {
    /// Recounts membership `g⁻¹x ∈ X` directly.
    pub fn verify(&self, k: u32, u: &[GroupElement], v: &[GroupElement]) -> bool {
        let g = GroupDescriptor::BaumslagSolitar(k);
        let gi = g.inverse(&self.g);
        let count = |xs: &[GroupElement]| xs.iter().filter(|x| in_x(&g.mul(&gi, x))).count();
        g.contains(&self.g)
            && count(u) == self.count_u
            && count(v) == self.count_v
            && self.count_u < self.count_v
    }
}

/// The translates `(f, 0)X` for `f ∈ [0, 1) ∩ Z[1/k]` partition `BS(1,k)`
/// by the fractional part of `t`, so when `|u| < |v|` some class holds more
/// entries of `v` than of `u`. Returns the class with the smallest `f`.
pub fn rosenblatt_find(k: u32, u: &[GroupElement], v: &[GroupElement]) -> Result<RosenblattWitness> {
    if u.len() >= v.len() {
        return Err(invalid(format!("need |u| < |v|, got {} and {}", u.len(), v.len())));
    }
    let g = GroupDescriptor::BaumslagSolitar(k);
    for x in u.iter().chain(v) {
        g.check(x)?;
    }
    let mut classes: BTreeMap<KAdic, (usize, usize)> = BTreeMap::new();
    for x in u {
        classes.entry(t_of(x).fractional()).or_default().0 += 1;
    }
    for x in v {
        classes.entry(t_of(x).fractional()).or_default().1 += 1;
    }
    let (f, (cu, cv)) = classes
        .into_iter()
        .find(|(_, (cu, cv))| cu < cv)
        .expect("pigeonhole: |u| < |v| forces a class with more v-entries");
    Ok(RosenblattWitness { g: GroupElement::BaumslagSolitar { t: f, m: 0 }, count_u: cu, count_v: cv })
}

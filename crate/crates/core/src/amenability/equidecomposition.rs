use crate::groups::{FiniteSet, GroupDescriptor, GroupElement};

/// Pieces `A_1, ..., A_t` of `A` and translators `g_1, ..., g_t` with
/// `{g_i A_i}` a partition of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquidecompositionWitness {
    pub pieces: Vec<FiniteSet>,
    pub translators: Vec<GroupElement>,
}

/// Checks that the pieces partition `a` and their translates partition `b`.
pub fn verify_equidecomposition(
    g: &GroupDescriptor,
    w: &EquidecompositionWitness,
    a: &FiniteSet,
    b: &FiniteSet,
) -> bool {
    if w.pieces.len() != w.translators.len() {
        return false;
    }
    let mut source = FiniteSet::new();
    let mut target = FiniteSet::new();
    for (piece, t) in w.pieces.iter().zip(&w.translators) {
        if !g.contains(t) {
            return false;
        }
        for x in piece {
            if !g.contains(x) || !source.insert(x.clone()) || !target.insert(g.mul(t, x)) {
                return false;
            }
        }
    }
    source == *a && target == *b
}

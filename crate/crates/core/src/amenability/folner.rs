use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use super::SubsetPredicate;
use crate::error::{invalid, parse_err, Result};
use crate::groups::{FiniteSet, GroupDescriptor};

/// How candidate sets `F` are produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FolnerStrategy {
    /// `F = B_r ∩ X` for `r = 0, 1, ..., r_max`.
    Balls { r_max: usize },
    /// The given sets, in order (each is intersected with `X`).
    Explicit(Vec<FiniteSet>),
}

/// `|KF ∩ X| < (1+ε)|F ∩ X|` with `F ∩ X` nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerWitness {
    pub k: FiniteSet,
    pub epsilon: BigRational,
    pub f: FiniteSet,
    /// `(|KF ∩ X|, |F ∩ X|)`.
    pub counts: (usize, usize),
}

/// One candidate examined during a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerReport {
    /// Radius for ball candidates, list position for explicit ones.
    pub index: usize,
    pub counts: (usize, usize),
    /// `None` when `F ∩ X` is empty.
    pub ratio: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FolnerOutcome {
    Found { witness: FolnerWitness, index: usize, tried: Vec<FolnerReport> },
    NotFound { tried: Vec<FolnerReport>, best_ratio: Option<BigRational> },
}

impl FolnerOutcome {
    pub fn witness(&self) -> Option<&FolnerWitness> {
        match self {
            FolnerOutcome::Found { witness, .. } => Some(witness),
            FolnerOutcome::NotFound { .. } => None,
        }
    }

    pub fn tried(&self) -> &[FolnerReport] {
        match self {
            FolnerOutcome::Found { tried, .. } | FolnerOutcome::NotFound { tried, .. } => tried,
        }
    }
}

fn ratio(counts: (usize, usize)) -> Option<BigRational> {
    (counts.1 > 0).then(|| BigRational::new(BigInt::from(counts.0), BigInt::from(counts.1)))
}

fn satisfies(counts: (usize, usize), epsilon: &BigRational) -> bool {
    counts.1 > 0
        && BigRational::from_integer(counts.0.into())
            < (BigRational::one() + epsilon) * BigRational::from_integer(counts.1.into())
}

fn counts_for(x: &SubsetPredicate, k: &FiniteSet, f: &FiniteSet) -> Result<(usize, usize)> {
    let fx = x.restrict(f);
    let kf = x.group().set_product(k, &fx)?;
    Ok((x.count(&kf), fx.len()))
}

/// Searches for a finite `F` with `|KF ∩ X| < (1+ε)|F ∩ X|`.
///
/// The negative outcome lists every candidate's ratio; it is evidence up to
/// the searched scale, not a proof.
pub fn folner_search(
    x: &SubsetPredicate,
    k: &FiniteSet,
    epsilon: &BigRational,
    strategy: &FolnerStrategy,
) -> Result<FolnerOutcome> {
    if k.is_empty() {
        return Err(invalid("K must be nonempty"));
    }
    if *epsilon <= BigRational::from_integer(0.into()) {
        return Err(invalid("epsilon must be positive"));
    }
    let g = x.group();
    for e in k {
        if !g.contains(e) {
            return Err(invalid(format!("{} is not in {g}", g.format_element(e))));
        }
    }
    let candidates: Box<dyn Iterator<Item = Result<FiniteSet>>> = match strategy {
        FolnerStrategy::Balls { r_max } => {
            let layers = g.ball_layers(*r_max)?;
            let mut acc = FiniteSet::new();
            let mut balls = Vec::new();
            for r in 0..=*r_max {
                // Finite groups stop growing; the last layer repeats.
                if let Some(layer) = layers.get(r) {
                    acc.extend(layer.iter().cloned());
                }
                balls.push(Ok(acc.clone()));
            }
            Box::new(balls.into_iter())
        }
        FolnerStrategy::Explicit(fs) => Box::new(fs.clone().into_iter().map(Ok)),
    };
    let mut tried = Vec::new();
    for (index, f) in candidates.enumerate() {
        let f = x.restrict(&f?);
        let counts = counts_for(x, k, &f)?;
        tried.push(FolnerReport { index, counts, ratio: ratio(counts) });
        if satisfies(counts, epsilon) {
            let witness = FolnerWitness { k: k.clone(), epsilon: epsilon.clone(), f, counts };
            return Ok(FolnerOutcome::Found { witness, index, tried });
        }
    }
    let best_ratio = tried.iter().filter_map(|t| t.ratio.clone()).min();
    Ok(FolnerOutcome::NotFound { tried, best_ratio })
}

/// `|K·B_r ∩ X| / |B_r ∩ X|` for `r = 0..=r_max`; `None` where `B_r ∩ X = ∅`.
pub fn expansion_profile(
    x: &SubsetPredicate,
    k: &FiniteSet,
    r_max: usize,
) -> Result<Vec<Option<BigRational>>> {
    let layers = x.group().ball_layers(r_max)?;
    let mut ball = FiniteSet::new();
    let mut out = Vec::new();
    for r in 0..=r_max {
        if let Some(layer) = layers.get(r) {
            ball.extend(layer.iter().cloned());
        }
        out.push(ratio(counts_for(x, k, &ball)?));
    }
    Ok(out)
}

impl FolnerWitness {
    /// Recounts from scratch, checks the stored counts and the inequality.
    pub fn verify(&self, x: &SubsetPredicate) -> Result<bool> {
        let g = x.group();
        let mut kf = FiniteSet::new();
        for a in self.f.iter().filter(|a| x.contains(a)) {
            for s in &self.k {
                kf.insert(g.try_mul(s, a)?);
            }
        }
        let counts = (
            kf.iter().filter(|e| x.contains(e)).count(),
            self.f.iter().filter(|e| x.contains(e)).count(),
        );
        Ok(counts == self.counts && satisfies(counts, &self.epsilon))
    }

    pub fn to_json(&self, g: &GroupDescriptor) -> Value {
        let set = |s: &FiniteSet| s.iter().map(|e| g.format_element(e)).collect::<Vec<_>>();
        json!({
            "kind": "folner",
            "group": g.to_string(),
            "K": set(&self.k),
            "epsilon": self.epsilon.to_string(),
            "F": set(&self.f),
            "counts": [self.counts.0, self.counts.1],
        })
    }

    pub fn from_json(v: &Value) -> Result<(GroupDescriptor, FolnerWitness)> {
        let g: GroupDescriptor = v["group"]
            .as_str()
            .ok_or_else(|| parse_err("missing group"))?
            .parse()?;
        let set = |key: &str| -> Result<FiniteSet> {
            v[key]
                .as_array()
                .ok_or_else(|| parse_err(format!("missing {key}")))?
                .iter()
                .map(|e| g.parse_element(e.as_str().ok_or_else(|| parse_err("elements are strings"))?))
                .collect()
        };
        let epsilon = crate::rings::parse_rational(
            v["epsilon"].as_str().ok_or_else(|| parse_err("missing epsilon"))?,
        )?;
        let c = v["counts"].as_array().filter(|c| c.len() == 2).ok_or_else(|| parse_err("counts"))?;
        let n = |i: usize| c[i].as_u64().map(|x| x as usize).ok_or_else(|| parse_err("counts"));
        let w = FolnerWitness { k: set("K")?, epsilon, f: set("F")?, counts: (n(0)?, n(1)?) };
        Ok((g, w))
    }
}

//! Crossed systems `(G, R, σ, ω)` over finite groups and their crossed
//! products `R *_ω^σ G`, with multiplication
//! `(r_g g)(r_h h) = r_g (g·r_h) ω(g,h) gh`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{parse_err, Error, Result};
use crate::groups::parse::split_top;
use crate::groups::{GroupDescriptor, GroupElement};
use crate::rings::{Elem, Ring};

/// Groups larger than this are refused.
pub const MAX_CROSSED_ORDER: usize = 64;

type ElemFn = dyn Fn(&Elem) -> Elem + Send + Sync;

/// A ring automorphism together with its inverse.
#[derive(Clone)]
pub enum Automorphism {
    Identity,
    /// On a product ring: `(σ x)[i] = x[perm[i]]`.
    PermuteFactors(Vec<usize>),
    /// `r ↦ u r u^{-1}`.
    Conjugate { unit: Elem, inverse: Elem },
    Custom { name: String, forward: Arc<ElemFn>, inverse: Arc<ElemFn> },
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automorphism::Identity => write!(f, "Identity"),
            Automorphism::PermuteFactors(p) => write!(f, "PermuteFactors({p:?})"),
            Automorphism::Conjugate { unit, .. } => write!(f, "Conjugate({unit:?})"),
            Automorphism::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Automorphism::Identity, Automorphism::Identity) => true,
            (Automorphism::PermuteFactors(a), Automorphism::PermuteFactors(b)) => a == b,
            (Automorphism::Conjugate { unit: a, .. }, Automorphism::Conjugate { unit: b, .. }) => a == b,
            (Automorphism::Custom { forward: a, .. }, Automorphism::Custom { forward: b, .. }) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    pub fn conjugate(ring: &Ring, unit: Elem) -> Result<Automorphism> {
        let inverse = ring
            .try_inverse(&unit)
            .ok_or_else(|| Error::Precondition(format!("{} is not a unit of {ring}", ring.format_elem(&unit))))?;
        Ok(Automorphism::Conjugate { unit, inverse })
    }

    pub fn apply(&self, ring: &Ring, x: &Elem) -> Elem {
        match self {
            Automorphism::Identity => x.clone(),
            Automorphism::PermuteFactors(p) => match x {
                Elem::Tuple(es) => Elem::Tuple(p.iter().map(|&i| es[i].clone()).collect()),
                other => other.clone(),
            },
            Automorphism::Conjugate { unit, inverse } => ring.mul(&ring.mul(unit, x), inverse),
            Automorphism::Custom { forward, .. } => forward(x),
        }
    }

    pub fn apply_inverse(&self, ring: &Ring, x: &Elem) -> Elem {
        match self {
            Automorphism::Identity => x.clone(),
            Automorphism::PermuteFactors(p) => match x {
                Elem::Tuple(es) => {
                    let mut out = es.clone();
                    for (i, &pi) in p.iter().enumerate() {
                        out[pi] = es[i].clone();
                    }
                    Elem::Tuple(out)
                }
                other => other.clone(),
            },
            Automorphism::Conjugate { unit, inverse } => ring.mul(&ring.mul(inverse, x), unit),
            Automorphism::Custom { inverse, .. } => inverse(x),
        }
    }

    fn is_identity(&self) -> bool {
        match self {
            Automorphism::Identity => true,
            Automorphism::PermuteFactors(p) => p.iter().enumerate().all(|(i, &j)| i == j),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedSystem {
    group: GroupDescriptor,
    elements: Vec<GroupElement>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    base: Ring,
    sigma: Vec<Automorphism>,
    omega: Vec<Vec<Elem>>,
}

/// Formal sum `Σ r_g g`, keyed by the index of `g` in
/// [`CrossedSystem::elements`]; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossedElem {
    terms: BTreeMap<usize, Elem>,
}

impl CrossedElem {
    pub fn terms(&self) -> impl Iterator<Item = (&usize, &Elem)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Group-element indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }
}

impl CrossedSystem {
    /// Builds the system from per-element data; `sigma(g)` and `omega(g,h)`
    /// are evaluated once for every group element or pair.
    pub fn new(
        group: GroupDescriptor,
        base: Ring,
        sigma: impl Fn(&GroupElement) -> Automorphism,
        omega: impl Fn(&GroupElement, &GroupElement) -> Elem,
    ) -> Result<CrossedSystem> {
        let elements = group.elements()?;
        if elements.len() > MAX_CROSSED_ORDER {
            return Err(Error::BoundExceeded(format!("group order exceeds {MAX_CROSSED_ORDER}")));
        }
        let index: BTreeMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let table: Vec<Vec<usize>> =
            elements.iter().map(|g| elements.iter().map(|h| index[&group.mul(g, h)]).collect()).collect();
        let inverses = elements.iter().map(|g| index[&group.inverse(g)]).collect();
        let sigma: Vec<Automorphism> = elements.iter().map(&sigma).collect();
        let omega: Vec<Vec<Elem>> = elements.iter().map(|g| elements.iter().map(|h| omega(g, h)).collect()).collect();
        for row in &omega {
            if let Some(w) = row.iter().find(|w| !base.contains(w)) {
                return Err(Error::InvalidArgument(format!("omega value {w:?} is not an element of {base}")));
            }
        }
        if let Ring::Product(fs) = &base {
            for s in &sigma {
                if let Automorphism::PermuteFactors(p) = s {
                    let mut sorted = p.clone();
                    sorted.sort_unstable();
                    if sorted != (0..fs.len()).collect::<Vec<_>>() {
                        return Err(Error::InvalidArgument(format!("{p:?} is not a permutation of the factors")));
                    }
                }
            }
        }
        Ok(CrossedSystem { group, elements, table, inverses, base, sigma, omega })
    }

    pub fn group_ring(base: Ring, group: GroupDescriptor) -> Result<CrossedSystem> {
        let one = base.one();
        CrossedSystem::new(group, base, |_| Automorphism::Identity, |_, _| one.clone())
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    /// Group elements in a fixed order, identity first.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.elements
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| Error::GroupMismatch(format!("{g:?} is not an element of {}", self.group)))
    }

    pub fn mul_index(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse_index(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn sigma(&self, g: usize) -> &Automorphism {
        &self.sigma[g]
    }

    pub fn omega(&self, g: usize, h: usize) -> &Elem {
        &self.omega[g][h]
    }

    /// `g·r = σ(g)(r)`.
    pub fn act(&self, g: usize, r: &Elem) -> Elem {
        self.sigma[g].apply(&self.base, r)
    }

    pub fn is_group_ring(&self) -> bool {
        self.sigma.iter().all(Automorphism::is_identity)
            && self.omega.iter().flatten().all(|w| self.base.is_one(w))
    }

    pub fn has_trivial_action(&self) -> bool {
        self.sigma.iter().all(Automorphism::is_identity)
    }

    pub fn zero(&self) -> CrossedElem {
        CrossedElem::default()
    }

    pub fn term(&self, g: usize, r: Elem) -> CrossedElem {
        let mut out = CrossedElem::default();
        self.push(&mut out, g, r);
        out
    }

    pub fn scalar(&self, c: Elem) -> CrossedElem {
        self.term(0, c)
    }

    pub fn coefficient(&self, x: &CrossedElem, g: usize) -> Elem {
        x.terms.get(&g).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn contains(&self, x: &CrossedElem) -> bool {
        x.terms.iter().all(|(g, c)| *g < self.order() && self.base.contains(c) && !self.base.is_zero(c))
    }

    fn push(&self, out: &mut CrossedElem, g: usize, c: Elem) {
        if self.base.is_zero(&c) {
            return;
        }
        let sum = match out.terms.get(&g) {
            Some(v) => self.base.add(v, &c),
            None => c,
        };
        if self.base.is_zero(&sum) {
            out.terms.remove(&g);
        } else {
            out.terms.insert(g, sum);
        }
    }

    pub fn add(&self, x: &CrossedElem, y: &CrossedElem) -> CrossedElem {
        let mut out = x.clone();
        for (g, c) in &y.terms {
            self.push(&mut out, *g, c.clone());
        }
        out
    }

    pub fn neg(&self, x: &CrossedElem) -> CrossedElem {
        CrossedElem { terms: x.terms.iter().map(|(g, c)| (*g, self.base.neg(c))).collect() }
    }

    pub fn mul(&self, x: &CrossedElem, y: &CrossedElem) -> CrossedElem {
        let r = &self.base;
        let mut out = CrossedElem::default();
        for (&g, rg) in &x.terms {
            for (&h, rh) in &y.terms {
                let c = r.mul(&r.mul(rg, &self.act(g, rh)), &self.omega[g][h]);
                self.push(&mut out, self.table[g][h], c);
            }
        }
        out
    }

    /// `Σ r_g`; only defined on group rings.
    pub fn augmentation(&self, x: &CrossedElem) -> Result<Elem> {
        if !self.is_group_ring() {
            return Err(Error::Precondition("augmentation needs trivial action and trivial cocycle".into()));
        }
        Ok(self.base.sum(x.terms.values()))
    }

    pub fn format(&self, x: &CrossedElem) -> String {
        let parts: Vec<String> = x
            .terms
            .iter()
            .map(|(g, c)| format!("{}: {}", self.group.format_element(&self.elements[*g]), self.base.format_elem(c)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Parses `{g: r, h: s}`.
    pub fn parse(&self, s: &str) -> Result<CrossedElem> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| parse_err(format!("expected {{g: r, ...}}, found `{t}`")))?;
        let mut out = CrossedElem::default();
        if inner.trim().is_empty() {
            return Ok(out);
        }
        for part in split_top(inner, ',') {
            let kv = split_top(part, ':');
            if kv.len() != 2 {
                return Err(parse_err(format!("expected `g: r`, found `{part}`")));
            }
            let g = self.index_of(&self.group.parse_element(kv[0])?)?;
            let c = self.base.parse_elem(kv[1])?;
            self.push(&mut out, g, c);
        }
        Ok(out)
    }

    /// Checks the crossed-system conditions:
    /// (i) `g·(h·r) ω(g,h) = ω(g,h) (gh)·r` for each sample `r`,
    /// (ii) `ω(g,h) ω(gh,k) = (g·ω(h,k)) ω(g,hk)` on all triples,
    /// (iii) `ω(g,1) = ω(1,g) = 1`,
    /// plus invertibility of every `ω(g,h)`, the stated inverses of `σ(g)`,
    /// additivity and multiplicativity of `σ(g)` on samples and, when the
    /// action is trivial, centrality of `ω` on samples.
    pub fn verify(&self, samples: &[Elem]) -> CrossedReport {
        let r = &self.base;
        let k = self.order();
        let mut rep = CrossedReport { order: k, samples: samples.len(), ..CrossedReport::default() };
        for (g, s) in self.sigma.iter().enumerate() {
            let ok = samples.iter().all(|x| {
                s.apply_inverse(r, &s.apply(r, x)) == *x
                    && s.apply(r, &s.apply_inverse(r, x)) == *x
                    && samples.iter().all(|y| {
                        s.apply(r, &r.mul(x, y)) == r.mul(&s.apply(r, x), &s.apply(r, y))
                            && s.apply(r, &r.add(x, y)) == r.add(&s.apply(r, x), &s.apply(r, y))
                    })
            }) && r.is_one(&s.apply(r, &r.one()));
            if !ok {
                rep.automorphism_failures.push(g);
            }
        }
        for g in 0..k {
            for h in 0..k {
                let w = &self.omega[g][h];
                if !r.is_unit(w) {
                    rep.non_unit_omega.push((g, h));
                }
                for (si, x) in samples.iter().enumerate() {
                    let lhs = r.mul(&self.act(g, &self.act(h, x)), w);
                    let rhs = r.mul(w, &self.act(self.table[g][h], x));
                    rep.condition_i_checked += 1;
                    if lhs != rhs {
                        rep.condition_i_failures.push((g, h, si));
                    }
                    if self.has_trivial_action() && r.mul(w, x) != r.mul(x, w) {
                        rep.non_central_omega.push((g, h, si));
                    }
                }
                for c in 0..k {
                    let lhs = r.mul(w, &self.omega[self.table[g][h]][c]);
                    let rhs = r.mul(&self.act(g, &self.omega[h][c]), &self.omega[g][self.table[h][c]]);
                    rep.condition_ii_checked += 1;
                    if lhs != rhs {
                        rep.condition_ii_failures.push((g, h, c));
                    }
                }
            }
            if !r.is_one(&self.omega[g][0]) || !r.is_one(&self.omega[0][g]) {
                rep.condition_iii_failures.push(g);
            }
        }
        rep
    }

    /// Reads a system from JSON:
    ///
    /// ```json
    /// {"group": "C(2)xC(2)", "ring": "Z",
    ///  "sigma": [{"g": "[1; 0]", "conjugate": <unit>} | {"g": ..., "permute": [1, 0]}],
    ///  "omega": [{"g": "[0; 1]", "h": "[1; 0]", "value": -1}]}
    /// ```
    ///
    /// Unlisted `σ(g)` are the identity and unlisted `ω(g,h)` are `1`.
    pub fn from_json(v: &Value) -> Result<CrossedSystem> {
        let field = |k: &str| v.get(k).and_then(Value::as_str).ok_or_else(|| parse_err(format!("missing \"{k}\"")));
        let group: GroupDescriptor = field("group")?.parse()?;
        let base: Ring = field("ring")?.parse()?;
        let mut sigma_map: BTreeMap<GroupElement, Automorphism> = BTreeMap::new();
        for s in v.get("sigma").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            let g = group.parse_element(s.get("g").and_then(Value::as_str).ok_or_else(|| parse_err("sigma entry needs \"g\""))?)?;
            let aut = if let Some(u) = s.get("conjugate") {
                Automorphism::conjugate(&base, base.elem_from_json(u)?)?
            } else if let Some(p) = s.get("permute").and_then(Value::as_array) {
                let perm = p
                    .iter()
                    .map(|x| x.as_u64().map(|i| i as usize).ok_or_else(|| parse_err("permutation entries are indices")))
                    .collect::<Result<Vec<_>>>()?;
                Automorphism::PermuteFactors(perm)
            } else {
                Automorphism::Identity
            };
            sigma_map.insert(g, aut);
        }
        let mut omega_map: BTreeMap<(GroupElement, GroupElement), Elem> = BTreeMap::new();
        for w in v.get("omega").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            let get = |k: &str| -> Result<GroupElement> {
                group.parse_element(w.get(k).and_then(Value::as_str).ok_or_else(|| parse_err(format!("omega entry needs \"{k}\"")))?)
            };
            let value = base.elem_from_json(w.get("value").ok_or_else(|| parse_err("omega entry needs \"value\""))?)?;
            omega_map.insert((get("g")?, get("h")?), value);
        }
        let one = base.one();
        CrossedSystem::new(
            group,
            base.clone(),
            |g| sigma_map.get(g).cloned().unwrap_or(Automorphism::Identity),
            |g, h| omega_map.get(&(g.clone(), h.clone())).cloned().unwrap_or_else(|| one.clone()),
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossedReport {
    pub order: usize,
    pub samples: usize,
    pub condition_i_checked: usize,
    /// `(g, h, sample index)`.
    pub condition_i_failures: Vec<(usize, usize, usize)>,
    pub condition_ii_checked: usize,
    pub condition_ii_failures: Vec<(usize, usize, usize)>,
    pub condition_iii_failures: Vec<usize>,
    pub non_unit_omega: Vec<(usize, usize)>,
    pub non_central_omega: Vec<(usize, usize, usize)>,
    /// Elements `g` whose `σ(g)` is not a ring automorphism with the given
    /// inverse on the samples.
    pub automorphism_failures: Vec<usize>,
}

impl CrossedReport {
    pub fn passed(&self) -> bool {
        self.condition_i_failures.is_empty()
            && self.condition_ii_failures.is_empty()
            && self.condition_iii_failures.is_empty()
            && self.non_unit_omega.is_empty()
            && self.non_central_omega.is_empty()
            && self.automorphism_failures.is_empty()
    }
}

impl fmt::Display for CrossedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_group_ring() {
            write!(f, "{}[{}]", self.base, self.group)
        } else {
            write!(f, "crossed({}, {})", self.base, self.group)
        }
    }
}

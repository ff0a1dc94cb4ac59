use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::flow::FlowGraph;
use crate::error::{parse_err, Result};
use crate::groups::{FiniteSet, GroupDescriptor, GroupElement};

/// Two translating injections `α, β: V → W` with disjoint images and
/// `α(x)x⁻¹, β(x)x⁻¹ ∈ K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionWitness {
    pub v: Vec<GroupElement>,
    pub w: Vec<GroupElement>,
    pub k: FiniteSet,
    pub alpha: BTreeMap<GroupElement, GroupElement>,
    pub beta: BTreeMap<GroupElement, GroupElement>,
}

/// `A ⊆ V` whose neighbourhood in `W` has fewer than `2|A|` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallViolation {
    pub set: FiniteSet,
    pub neighbourhood: FiniteSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InjectionOutcome {
    Found(InjectionWitness),
    Infeasible { violation: HallViolation, max_flow: u64 },
}

impl InjectionOutcome {
    pub fn witness(&self) -> Option<&InjectionWitness> {
        match self {
            InjectionOutcome::Found(w) => Some(w),
            InjectionOutcome::Infeasible { .. } => None,
        }
    }
}

fn dedup(xs: &[GroupElement]) -> Vec<GroupElement> {
    let mut seen = FiniteSet::new();
    xs.iter().filter(|x| seen.insert((*x).clone())).cloned().collect()
}

/// Gives every `x ∈ V` two distinct targets `w ∈ W` with `w·x⁻¹ ∈ K`, no
/// target used twice, or returns a Hall-violating subset of `V`.
///
/// Max-flow with capacity 2 out of each `x` and 1 into the sink from each
/// `w`. Left-to-right edges are uncapacitated so the residual cut yields the
/// violating set directly.
pub fn find_two_to_one_injection(
    g: &GroupDescriptor,
    v: &[GroupElement],
    w: &[GroupElement],
    k: &FiniteSet,
) -> Result<InjectionOutcome> {
    for x in v.iter().chain(w).chain(k) {
        g.check(x)?;
    }
    let (v, w) = (dedup(v), dedup(w));
    let w_index: HashMap<&GroupElement, usize> = w.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let (nv, nw) = (v.len(), w.len());
    let (source, sink) = (nv + nw, nv + nw + 1);
    let mut graph = FlowGraph::new(nv + nw + 2);
    let mut middle: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, x) in v.iter().enumerate() {
        graph.add_edge(source, i, 2);
        let mut targets: Vec<usize> = k.iter().filter_map(|s| w_index.get(&g.mul(s, x)).copied()).collect();
        targets.sort_unstable();
        for j in targets {
            let id = graph.add_edge(i, nv + j, 2 * nv as u64 + 1);
            middle[i].push((j, id));
        }
    }
    for j in 0..nw {
        graph.add_edge(nv + j, sink, 1);
    }
    let flow = graph.max_flow(source, sink);
    if flow == 2 * nv as u64 {
        let mut alpha = BTreeMap::new();
        let mut beta = BTreeMap::new();
        for (i, x) in v.iter().enumerate() {
            let used: Vec<usize> =
                middle[i].iter().filter(|(_, id)| graph.flow_on(*id) > 0).map(|(j, _)| *j).collect();
            debug_assert_eq!(used.len(), 2);
            alpha.insert(x.clone(), w[used[0]].clone());
            beta.insert(x.clone(), w[used[1]].clone());
        }
        return Ok(InjectionOutcome::Found(InjectionWitness { v, w, k: k.clone(), alpha, beta }));
    }
    let reach = graph.reachable(source);
    let set: FiniteSet = v.iter().enumerate().filter(|(i, _)| reach[*i]).map(|(_, x)| x.clone()).collect();
    let neighbourhood = neighbourhood(g, &set, &w, k);
    Ok(InjectionOutcome::Infeasible { violation: HallViolation { set, neighbourhood }, max_flow: flow })
}

fn neighbourhood(g: &GroupDescriptor, a: &FiniteSet, w: &[GroupElement], k: &FiniteSet) -> FiniteSet {
    w.iter()
        .filter(|y| a.iter().any(|x| k.contains(&g.mul(y, &g.inverse(x)))))
        .cloned()
        .collect()
}

impl InjectionWitness {
    /// Exhaustive check of the defining conditions.
    pub fn verify(&self, g: &GroupDescriptor) -> bool {
        let wset: FiniteSet = self.w.iter().cloned().collect();
        let mut images = FiniteSet::new();
        for x in &self.v {
            for map in [&self.alpha, &self.beta] {
                let Some(y) = map.get(x) else { return false };
                if !wset.contains(y) || !images.insert(y.clone()) {
                    return false;
                }
                if !g.contains(y) || !self.k.contains(&g.mul(y, &g.inverse(x))) {
                    return false;
                }
            }
        }
        self.alpha.len() == self.v.len() && self.beta.len() == self.v.len()
    }

    pub fn to_json(&self, g: &GroupDescriptor) -> Value {
        let list = |xs: &mut dyn Iterator<Item = &GroupElement>| xs.map(|e| g.format_element(e)).collect::<Vec<_>>();
        let pairs = |m: &BTreeMap<GroupElement, GroupElement>| {
            self.v
                .iter()
                .map(|x| json!([g.format_element(x), g.format_element(&m[x])]))
                .collect::<Vec<_>>()
        };
        json!({
            "kind": "injection",
            "group": g.to_string(),
            "V": list(&mut self.v.iter()),
            "W": list(&mut self.w.iter()),
            "K": list(&mut self.k.iter()),
            "alpha": pairs(&self.alpha),
            "beta": pairs(&self.beta),
        })
    }

    pub fn from_json(v: &Value) -> Result<(GroupDescriptor, InjectionWitness)> {
        let g: GroupDescriptor = v["group"].as_str().ok_or_else(|| parse_err("missing group"))?.parse()?;
        let elem = |e: &Value| -> Result<GroupElement> {
            g.parse_element(e.as_str().ok_or_else(|| parse_err("elements are strings"))?)
        };
        let list = |key: &str| -> Result<Vec<GroupElement>> {
            v[key].as_array().ok_or_else(|| parse_err(format!("missing {key}")))?.iter().map(elem).collect()
        };
        let map = |key: &str| -> Result<BTreeMap<GroupElement, GroupElement>> {
            v[key]
                .as_array()
                .ok_or_else(|| parse_err(format!("missing {key}")))?
                .iter()
                .map(|p| match p.as_array().map(Vec::as_slice) {
                    Some([a, b]) => Ok((elem(a)?, elem(b)?)),
                    _ => Err(parse_err(format!("{key} entries are [x, image] pairs"))),
                })
                .collect()
        };
        let w = InjectionWitness {
            v: list("V")?,
            w: list("W")?,
            k: list("K")?.into_iter().collect(),
            alpha: map("alpha")?,
            beta: map("beta")?,
        };
        Ok((g, w))
    }
}

impl HallViolation {
    /// Recomputes `N(A)` by enumeration and checks `|N(A)| < 2|A|`.
    pub fn verify(&self, g: &GroupDescriptor, v: &[GroupElement], w: &[GroupElement], k: &FiniteSet) -> bool {
        let vset: FiniteSet = v.iter().cloned().collect();
        let wset: Vec<GroupElement> = dedup(w);
        !self.set.is_empty()
            && self.set.is_subset(&vset)
            && neighbourhood(g, &self.set, &wset, k) == self.neighbourhood
            && self.neighbourhood.len() < 2 * self.set.len()
    }
}

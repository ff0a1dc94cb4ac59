use std::io::{self, BufRead};
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde_json::json;
use ugnkit::algebras::weyl::WeylAlgebra;
use ugnkit::graded::crossed::CrossedSystem;
use ugnkit::graded::{endo_graded_construction, psi_embedding_check};
use ugnkit::groups::GroupDescriptor;
use ugnkit::monoids::{LeqVerdict, MonoidQuery};
use ugnkit::rings::{Elem, Ring};

use crate::read_json;
use crate::report::{check_line, Report, Verdict};

#[derive(Args)]
pub struct MonoidArgs {
    /// e.g. "3*x1 <= 2*x1 in M(2,1,1)" or "4a <= 3a in C(3,2)".
    query: String,
    /// Rewrite depth for the closure search in M(n,k,l).
    #[arg(long, default_value_t = ugnkit::monoids::DEFAULT_CLOSURE_DEPTH)]
    depth: usize,
}

#[derive(Args)]
pub struct CrossedArgs {
    /// Crossed system JSON; otherwise the group ring of --ring over --group.
    #[arg(long = "in", conflicts_with_all = ["group", "ring"])]
    input: Option<PathBuf>,
    #[arg(long, requires = "ring")]
    group: Option<String>,
    #[arg(long, requires = "group")]
    ring: Option<String>,
    /// Base ring element used in the sampled checks (repeatable).
    #[arg(long = "sample", allow_hyphen_values = true)]
    samples: Vec<String>,
    /// Multiply two elements, e.g. --mul "{1: 1}" --mul "{1: 2}".
    #[arg(long, num_args = 2, allow_hyphen_values = true)]
    mul: Vec<String>,
}

#[derive(Args)]
pub struct EndoArgs {
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long)]
    group: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
}

#[derive(Args)]
pub struct PsiArgs {
    /// `weyl:n=N` or a ring such as "Weyl(Z; a=1; b=2)".
    #[arg(long, default_value = "weyl:n=1")]
    algebra: String,
    /// Sample element (repeatable); defaults to the generators.
    #[arg(long = "sample", allow_hyphen_values = true)]
    samples: Vec<String>,
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    degrees: String,
    #[arg(long, default_value = "-8..8", allow_hyphen_values = true)]
    window: String,
}

#[derive(Args)]
pub struct NormalizeArgs {
    /// `leavitt:n=N`, `weyl:n=N` or any ring, e.g. "L(1,3; Q)".
    #[arg(long)]
    algebra: String,
}

/// `leavitt:n=N`, `weyl:n=N`, or a ring in the usual text form.
pub fn parse_algebra(s: &str) -> Result<Ring> {
    let n = |rest: &str| -> Result<usize> {
        rest.trim()
            .strip_prefix("n=")
            .and_then(|d| d.trim().parse().ok())
            .with_context(|| format!("expected n=<number> in `{s}`"))
    };
    if let Some(rest) = s.strip_prefix("leavitt:") {
        return Ok(format!("L(1,{})", n(rest)?).parse()?);
    }
    if let Some(rest) = s.strip_prefix("weyl:") {
        return Ok(Ring::Weyl(Arc::new(WeylAlgebra::classical(n(rest)?)?)));
    }
    Ok(s.parse()?)
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once("..").with_context(|| format!("expected a..b, got `{s}`"))?;
    Ok((a.trim().parse().context("range start")?, b.trim().parse().context("range end")?))
}

pub fn monoid(a: &MonoidArgs) -> Result<Report> {
    match a.query.parse::<MonoidQuery>()? {
        MonoidQuery::Cnk { monoid, lhs, rhs } => {
            let holds = monoid.leq(lhs, rhs);
            let (s, t) = (monoid.element(lhs), monoid.element(rhs));
            Ok(Report::new(Verdict::from_bool(holds), json!({"monoid": monoid.to_string(), "holds": holds,
                "lhs": s.to_string(), "rhs": t.to_string(), "generating_number": monoid.generating_number()}))
                .line(format!("in {monoid}: {lhs}a = {s}, {rhs}a = {t}"))
                .line(format!("{s} <= {t}: {holds}")))
        }
        MonoidQuery::Mnkl { monoid, lhs, rhs } => {
            let verdict = monoid.leq(&lhs, &rhs, a.depth)?;
            let mut rep = Report::new(Verdict::Pass, json!({"monoid": monoid.to_string(), "lhs": lhs.to_string(),
                "rhs": rhs.to_string(), "verdict": serde_json::to_value(&verdict)?}));
            rep.push(format!("in {monoid}: {lhs} <= {rhs}?"));
            match &verdict {
                LeqVerdict::Yes { z, chain } => {
                    let ok = monoid.chain_holds(&rhs, chain);
                    rep.verdict = Verdict::from_bool(ok);
                    rep.push(format!("yes: {lhs} + {z} = {rhs}"));
                    let mut cur = rhs.to_string();
                    for (r, e) in chain {
                        rep.push(format!("  {cur}  [{r}]  {e}"));
                        cur = e.to_string();
                    }
                    rep.push(check_line("chain re-verified", ok));
                }
                LeqVerdict::No(sep) => {
                    let ok = monoid.separator_holds(sep, &lhs, &rhs)?;
                    rep.verdict = if ok { Verdict::Negative } else { Verdict::Inconclusive };
                    rep.push(format!("no: {sep}"));
                    rep.push(check_line("separator re-verified", ok));
                }
                LeqVerdict::Unknown { depth, visited } => {
                    rep.verdict = Verdict::Inconclusive;
                    rep.push(format!("undecided after depth {depth}, {visited} states visited"));
                }
            }
            Ok(rep)
        }
    }
}

pub fn crossed(a: &CrossedArgs) -> Result<Report> {
    let cs = match (&a.input, &a.group, &a.ring) {
        (Some(p), _, _) => CrossedSystem::from_json(&read_json(p)?)?,
        (None, Some(g), Some(r)) => CrossedSystem::group_ring(r.parse()?, g.parse::<GroupDescriptor>()?)?,
        _ => bail!("give --in or both --group and --ring"),
    };
    let base = cs.base().clone();
    let samples: Vec<Elem> = if a.samples.is_empty() {
        [0, 1, 2, -1].iter().map(|&n| base.from_int(n)).collect()
    } else {
        a.samples.iter().map(|s| base.parse_elem(s)).collect::<ugnkit::Result<_>>()?
    };
    let res = cs.verify(&samples);
    let mut rep = Report::new(Verdict::from_bool(res.passed()), json!({"system": cs.to_string(), "order": res.order,
        "samples": res.samples, "passed": res.passed()}));
    rep.push(format!("{cs}: |G| = {}, {} samples", res.order, res.samples));
    rep.push(check_line("sigma(g) are automorphisms", res.automorphism_failures.is_empty()));
    rep.push(check_line("omega(g,h) are units", res.non_unit_omega.is_empty()));
    rep.push(format!(
        "{} ({} instances)",
        check_line("g(h r) omega = omega (gh) r", res.condition_i_failures.is_empty()),
        res.condition_i_checked
    ));
    rep.push(format!(
        "{} ({} instances)",
        check_line("cocycle identity", res.condition_ii_failures.is_empty()),
        res.condition_ii_checked
    ));
    rep.push(check_line("normalized omega", res.condition_iii_failures.is_empty()));
    if cs.has_trivial_action() {
        rep.push(check_line("omega central", res.non_central_omega.is_empty()));
    }
    if let [x, y] = a.mul.as_slice() {
        let (x, y) = (cs.parse(x)?, cs.parse(y)?);
        let p = cs.format(&cs.mul(&x, &y));
        rep.push(format!("({}) * ({}) = {p}", cs.format(&x), cs.format(&y)));
        rep.data["product"] = json!(p);
    }
    Ok(rep)
}

pub fn endo_graded(a: &EndoArgs) -> Result<Report> {
    let s: Ring = a.ring.parse()?;
    let g: GroupDescriptor = a.group.parse()?;
    let (t, res) = endo_graded_construction(s.clone(), g.clone(), a.n, a.l)?;
    let dims: Vec<String> = t
        .elements()
        .iter()
        .zip(&res.component_dims)
        .map(|(e, d)| format!("{}:{d}", g.format_element(e)))
        .collect();
    let strong = res.strong.entries.iter().filter(|e| e.witness.is_some()).count();
    let mut rep = Report::new(Verdict::from_bool(res.passed()), json!({"p": res.p, "size": res.size,
        "component_dims": res.component_dims, "closure_pairs": res.closure_pairs,
        "closure_failures": res.closure_failures, "strong": res.strong.passed(),
        "base_decomposition": res.base_decomposition_ok}));
    rep.push(format!("S = {s}, G = {g}, n = {}, l = {}: p = {}, T = M_{}(S)", a.n, a.l, res.p, res.size));
    rep.push(format!("ranks {:?}", t.ranks()));
    rep.push(format!("component dimensions {}", dims.join(", ")));
    rep.push(check_line("matrix units homogeneous and complete", res.matrix_units_ok));
    rep.push(format!(
        "{} ({} unit pairs)",
        check_line("T_g T_h ⊆ T_gh", res.closure_failures.is_empty()),
        res.closure_pairs
    ));
    rep.push(format!(
        "{} ({strong}/{} degrees, coefficients within ±{})",
        check_line("strongly graded", res.strong.passed()),
        res.strong.entries.len(),
        res.strong.bound
    ));
    rep.push(check_line(&format!("T_1 ≅ {}", t.base_decomposition_ring()), res.base_decomposition_ok));
    Ok(rep)
}

pub fn psi(a: &PsiArgs) -> Result<Report> {
    let ring = parse_algebra(&a.algebra)?;
    let Ring::Weyl(alg) = &ring else {
        bail!("the block embedding is available for Weyl algebras, got {ring}");
    };
    let samples: Vec<Elem> = if a.samples.is_empty() {
        let mut v: Vec<Elem> = (1..=alg.n() as u8).map(|i| Elem::Weyl(alg.x(i))).collect();
        v.push(Elem::Weyl(alg.y()));
        v
    } else {
        a.samples.iter().map(|s| ring.parse_elem(s)).collect::<ugnkit::Result<_>>()?
    };
    let (degrees, window) = (parse_range(&a.degrees)?, parse_range(&a.window)?);
    let res = psi_embedding_check(alg.as_ref(), &samples, degrees, window)?;
    let rep = Report::new(Verdict::from_bool(res.passed()), json!({"algebra": ring.to_string(),
        "degrees": [degrees.0, degrees.1], "window": [window.0, window.1], "samples": res.samples,
        "entries_checked": res.entries_checked, "unital": res.unital,
        "additive_failures": res.additive_failures, "multiplicative_failures": res.multiplicative_failures}))
    .line(format!("{ring}: degrees {}..{}, indices {}..{}, {} samples", degrees.0, degrees.1, window.0, window.1, res.samples))
    .line(check_line("unital", res.unital))
    .line(check_line("additive", res.additive_failures.is_empty()))
    .line(check_line("multiplicative", res.multiplicative_failures.is_empty()))
    .line(format!("{} entries compared", res.entries_checked));
    Ok(rep)
}

pub fn normalize(a: &NormalizeArgs) -> Result<Report> {
    let ring = parse_algebra(&a.algebra)?;
    let mut out = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = line?;
        let s = line.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let e = ring.parse_elem(s).with_context(|| format!("line {}", i + 1))?;
        out.push(ring.format_elem(&e));
    }
    let mut rep = Report::new(Verdict::Pass, json!({"ring": ring.to_string(), "normal_forms": out}));
    rep.lines = out;
    rep.bare = true;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_specs() {
        assert_eq!(parse_algebra("leavitt:n=3").unwrap().to_string(), "L(1,3)");
        assert!(matches!(parse_algebra("weyl:n=2").unwrap(), Ring::Weyl(w) if w.n() == 2));
        assert_eq!(parse_algebra("Z/7").unwrap().to_string(), "Z/7");
        assert!(parse_algebra("leavitt:3").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..2").unwrap(), (-2, 2));
        assert_eq!(parse_range(" 0 .. 5").unwrap(), (0, 5));
        assert!(parse_range("3").is_err());
    }
}

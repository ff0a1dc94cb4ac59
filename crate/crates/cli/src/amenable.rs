use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde_json::json;
use ugnkit::amenability::{
    bs_example_check, find_two_to_one_injection, folner_search, rosenblatt_find, FolnerOutcome, FolnerStrategy,
    InjectionOutcome, InjectionWitness, SubsetPredicate,
};
use ugnkit::groups::{FiniteSet, GroupDescriptor, GroupElement};
use ugnkit::rings::{parse_rational, Ring};
use ugnkit::translation::{collapse_matrices, compress_certificate, TranslationCertificate};

use crate::report::{check_line, Report, Verdict};
use crate::{read_json, write_json};

#[derive(Args)]
pub struct FolnerArgs {
    #[arg(long)]
    group: String,
    /// `G`, `X`, `X0`, an explicit set or `inv(...)`.
    #[arg(long, default_value = "G")]
    subset: String,
    /// Finite set K; defaults to the ball of radius 1.
    #[arg(long)]
    k: Option<String>,
    #[arg(long, default_value = "1/2")]
    eps: String,
    /// Largest ball radius tried.
    #[arg(long, env = "UGNKIT_RMAX", default_value_t = 6)]
    rmax: usize,
    /// Explicit candidate set F (repeatable); replaces the ball search.
    #[arg(long = "f")]
    f: Vec<String>,
    /// Write the witness here when one is found.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ParadoxArgs {
    #[arg(long, default_value = "F2")]
    group: String,
    /// V = B_r and W = B_{r+1} unless --v / --w are given.
    #[arg(long, default_value_t = 2)]
    radius: usize,
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    w: Option<String>,
    /// Finite set K; defaults to the ball of radius 1.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CollapseArgs {
    /// Injection witness written by `paradox --out`.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "Z")]
    ring: String,
}

#[derive(Args)]
pub struct CompressArgs {
    /// Certificate over a translation ring.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "F")]
    f: String,
    /// Defaults to the set of shifts used by the certificate.
    #[arg(long = "K")]
    k: Option<String>,
    /// Defaults to `<input>.compressed.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BsArgs {
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, default_value_t = 4)]
    radius: usize,
}

#[derive(Args)]
pub struct RosenblattArgs {
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Element `(t, m)` of u (repeatable, multiplicity counts).
    #[arg(long = "u", allow_hyphen_values = true)]
    u: Vec<String>,
    #[arg(long = "v", allow_hyphen_values = true)]
    v: Vec<String>,
}

fn unit_ball(g: &GroupDescriptor) -> Result<FiniteSet> {
    Ok(g.ball(1)?.into_iter().collect())
}

fn set_or_ball(g: &GroupDescriptor, s: &Option<String>) -> Result<FiniteSet> {
    match s {
        Some(s) => Ok(g.parse_set(s)?),
        None => unit_ball(g),
    }
}

pub fn folner(a: &FolnerArgs) -> Result<Report> {
    let g: GroupDescriptor = a.group.parse()?;
    let x = SubsetPredicate::parse(&g, &a.subset)?;
    let k = set_or_ball(&g, &a.k)?;
    let eps = parse_rational(&a.eps)?;
    let strategy = if a.f.is_empty() {
        FolnerStrategy::Balls { r_max: a.rmax }
    } else {
        FolnerStrategy::Explicit(a.f.iter().map(|f| g.parse_set(f)).collect::<ugnkit::Result<_>>()?)
    };
    let out = folner_search(&x, &k, &eps, &strategy)?;
    let col = if a.f.is_empty() { "r" } else { "F#" };
    let rows: Vec<_> = out
        .tried()
        .iter()
        .map(|t| {
            json!({"index": t.index, "kf": t.counts.0, "f": t.counts.1,
                   "ratio": t.ratio.as_ref().map(|r| r.to_string())})
        })
        .collect();
    let mut rep = Report::new(Verdict::Pass, json!({"group": g.to_string(), "subset": x.rule_text(),
        "K": g.format_set(&k), "epsilon": eps.to_string(), "tried": rows}));
    rep.push(format!("X = {x}, K = {}, eps = {eps}", g.format_set(&k)));
    rep.push(format!("{col:>3}  |KF∩X|  |F∩X|  ratio"));
    for t in out.tried() {
        let ratio = t.ratio.as_ref().map_or("-".to_string(), |r| r.to_string());
        rep.push(format!("{:>3}  {:>6}  {:>5}  {ratio}", t.index, t.counts.0, t.counts.1));
    }
    match &out {
        FolnerOutcome::Found { witness, index, .. } => {
            rep.push(format!("found at {col} = {index}: {} < (1+{eps})·{}", witness.counts.0, witness.counts.1));
            rep.data["witness"] = witness.to_json(&g);
            if let Some(p) = &a.out {
                let mut w = witness.to_json(&g);
                w["subset"] = json!(x.rule_text());
                write_json(p, &w)?;
                rep.push(format!("witness written to {}", p.display()));
            }
        }
        FolnerOutcome::NotFound { best_ratio, .. } => {
            rep.verdict = Verdict::Negative;
            let best = best_ratio.as_ref().map_or("-".to_string(), |r| r.to_string());
            rep.push(format!("no Følner set among the candidates; best ratio {best}, needed < 1+{eps}"));
            rep.data["best_ratio"] = json!(best);
        }
    }
    Ok(rep)
}

pub fn paradox(a: &ParadoxArgs) -> Result<Report> {
    let g: GroupDescriptor = a.group.parse()?;
    let k = set_or_ball(&g, &a.k)?;
    let v: Vec<GroupElement> = match &a.v {
        Some(s) => g.parse_set(s)?.into_iter().collect(),
        None => g.ball(a.radius)?,
    };
    let w: Vec<GroupElement> = match &a.w {
        Some(s) => g.parse_set(s)?.into_iter().collect(),
        None => g.ball(a.radius + 1)?,
    };
    let mut rep = Report::new(Verdict::Pass, json!({"group": g.to_string(), "V": v.len(), "W": w.len()}));
    rep.push(format!("{g}: |V| = {}, |W| = {}, K = {}", v.len(), w.len(), g.format_set(&k)));
    match find_two_to_one_injection(&g, &v, &w, &k)? {
        InjectionOutcome::Found(wit) => {
            let ok = wit.verify(&g);
            rep.verdict = Verdict::from_bool(ok);
            rep.push(format!("two-to-one injection found, {} targets used", 2 * wit.v.len()));
            rep.push(check_line("re-verified", ok));
            rep.data["witness"] = wit.to_json(&g);
            if let Some(p) = &a.out {
                write_json(p, &wit.to_json(&g))?;
                rep.push(format!("witness written to {}", p.display()));
            }
        }
        InjectionOutcome::Infeasible { violation, max_flow } => {
            let ok = violation.verify(&g, &v, &w, &k);
            rep.verdict = if ok { Verdict::Negative } else { Verdict::Inconclusive };
            rep.push(format!("no injection: max flow {max_flow} < {}", 2 * v.len()));
            rep.push(format!(
                "Hall violation: |A| = {}, |N(A)| = {} < {}",
                violation.set.len(),
                violation.neighbourhood.len(),
                2 * violation.set.len()
            ));
            rep.push(check_line("Hall set re-verified", ok));
            rep.data["hall_set"] = json!(g.format_set(&violation.set));
            rep.data["neighbourhood"] = json!(g.format_set(&violation.neighbourhood));
        }
    }
    Ok(rep)
}

pub fn collapse(a: &CollapseArgs) -> Result<Report> {
    let (g, wit) = InjectionWitness::from_json(&read_json(&a.input)?)?;
    let ring: Ring = a.ring.parse()?;
    let res = collapse_matrices(&wit, &ring)?;
    let mut rep = Report::new(Verdict::from_bool(res.passed()), json!({}));
    rep.push(format!("{g} over {ring}: M, N are {}x{}", res.m.rows(), res.m.cols()));
    let mut checks = serde_json::Map::new();
    for c in &res.checks {
        let mut line = check_line(c.name, c.holds);
        if let Some((i, j)) = c.first_failure {
            line += &format!(" (first failure at ({i}, {j}))");
        }
        rep.push(line);
        checks.insert(c.name.to_string(), json!(c.holds));
    }
    rep.push(format!("W outside the images: {}", res.uncovered.len()));
    rep.data = json!({"group": g.to_string(), "ring": ring.to_string(), "checks": checks, "uncovered": res.uncovered.len()});
    Ok(rep)
}

pub fn compress(a: &CompressArgs) -> Result<Report> {
    let cert = TranslationCertificate::from_json(&read_json(&a.input)?)?;
    let g = cert.x.group().clone();
    let f = g.parse_set(&a.f)?;
    let k = a.k.as_deref().map(|s| g.parse_set(s)).transpose()?;
    let res = compress_certificate(&cert, &f, k.as_ref())?;
    let out = a.out.clone().unwrap_or_else(|| a.input.with_extension("compressed.json"));
    write_json(&out, &res.certificate.to_json())?;
    let c = &res.certificate;
    let mut rep = Report::new(Verdict::from_bool(res.status.is_valid()), json!({
        "K": g.format_set(&res.k),
        "F_X": res.f_x.len(),
        "U": res.u.len(),
        "window": res.window_size,
        "status": res.status.to_string(),
        "out": out.display().to_string(),
    }));
    rep.push(format!("{} over {}: {}x{} to {}x{}", cert.x, cert.ring, cert.m, cert.n, c.m(), c.n()));
    rep.push(format!("K = {}, |F ∩ X| = {}, |KF ∩ X| = {}", g.format_set(&res.k), res.f_x.len(), res.u.len()));
    rep.push(format!("AB = I checked on {} window elements", res.window_size));
    rep.push(format!("compressed certificate: {}", res.status));
    rep.push(format!("written to {}", out.display()));
    Ok(rep)
}

pub fn bs_check(a: &BsArgs) -> Result<Report> {
    let res = bs_example_check(a.k, a.radius)?;
    let mut rep = Report::new(Verdict::from_bool(res.passed()), json!({"k": res.k, "radius": res.radius, "ball": res.ball_size}));
    rep.push(format!("BS(1,{}) ball of radius {}: {} elements", res.k, res.radius, res.ball_size));
    let mut checks = Vec::new();
    for c in &res.checks {
        rep.push(format!("{} ({} instances, {} failures)", check_line(c.name, c.passed()), c.checked, c.failures));
        checks.push(json!({"name": c.name, "checked": c.checked, "failures": c.failures}));
    }
    rep.data["checks"] = json!(checks);
    Ok(rep)
}

pub fn rosenblatt(a: &RosenblattArgs) -> Result<Report> {
    let g = GroupDescriptor::BaumslagSolitar(a.k);
    let parse = |xs: &[String]| -> Result<Vec<GroupElement>> {
        xs.iter().map(|s| g.parse_element(s).with_context(|| format!("element `{s}`"))).collect()
    };
    let (u, v) = (parse(&a.u)?, parse(&a.v)?);
    if u.len() >= v.len() {
        bail!("need fewer entries in u than in v, got {} and {}", u.len(), v.len());
    }
    let w = rosenblatt_find(a.k, &u, &v)?;
    let ok = w.verify(a.k, &u, &v);
    let gs = g.format_element(&w.g);
    let rep = Report::new(Verdict::from_bool(ok), json!({"g": gs, "count_u": w.count_u, "count_v": w.count_v}))
        .line(format!("g = {gs}: |gX ∩ u| = {} < |gX ∩ v| = {}", w.count_u, w.count_v))
        .line(check_line("recounted", ok));
    Ok(rep)
}

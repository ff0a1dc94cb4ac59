use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Subcommand};
use serde_json::{json, Value};
use ugnkit::amenability::{FolnerWitness, InjectionWitness, SubsetPredicate};
use ugnkit::rings::{CertificateStatus, RankCertificate, Ring, RingHom};

use crate::report::{check_line, Report, Verdict};
use crate::{read_json, write_json};

#[derive(Subcommand)]
pub enum CertCommand {
    /// Check `AB = I_m` and report Valid, ValidBGN or the first bad entry.
    Verify(Single),
    /// Turn an (n, n+1) certificate into an (n, target) one.
    Extend {
        #[command(flatten)]
        io: Single,
        #[arg(long)]
        target: usize,
    },
    /// The transposed certificate over the opposite ring.
    Opposite(Single),
    /// Move between `R` and `M_s(R)`.
    Block {
        #[command(flatten)]
        io: Single,
        /// Regroup into `s x s` blocks over `M_s(R)`.
        #[arg(long, conflicts_with = "down", required_unless_present = "down")]
        up: Option<usize>,
        /// Expand a certificate over `M_s(R)` into one over `R`.
        #[arg(long)]
        down: bool,
    },
    /// Certificate over the product ring from certificates of equal shape.
    Product {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Push forward along `reduction:m`, `augmentation`, `projection:i` or `identity`.
    Hom {
        #[command(flatten)]
        io: Single,
        #[arg(long)]
        map: String,
    },
}

#[derive(Args)]
pub struct Single {
    #[arg(long = "in")]
    input: PathBuf,
    /// Write the resulting certificate here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(p: &PathBuf) -> Result<RankCertificate> {
    Ok(RankCertificate::from_json(&read_json(p)?)?)
}

fn hom(ring: &Ring, spec: &str) -> Result<RingHom> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    };
    let num = |what: &str| -> Result<u64> {
        match arg.map(str::parse::<u64>) {
            Some(Ok(x)) => Ok(x),
            _ => bail!("{name} needs a numeric argument, as in `{name}:{what}`"),
        }
    };
    Ok(match name {
        "reduction" => RingHom::reduction(num("m")?)?,
        "augmentation" => RingHom::augmentation(ring)?,
        "projection" => RingHom::projection(ring, num("i")? as usize)?,
        "identity" => RingHom::identity(ring.clone()),
        _ => bail!("unknown map `{spec}`"),
    })
}

fn status_verdict(s: CertificateStatus) -> Verdict {
    Verdict::from_bool(s.is_valid())
}

fn describe(c: &RankCertificate) -> String {
    format!("({}, {}) certificate over {}", c.n(), c.m(), c.ring())
}

fn emit(op: &str, c: RankCertificate, out: &Option<PathBuf>) -> Result<Report> {
    let status = c.verify();
    let mut rep = Report::new(status_verdict(status), json!({"status": status.to_string(), "certificate": c.to_json()}));
    rep.push(format!("{op}: {}", describe(&c)));
    rep.push(format!("status: {status}"));
    match out {
        Some(p) => {
            write_json(p, &c.to_json())?;
            rep.push(format!("written to {}", p.display()));
        }
        None => rep.push(serde_json::to_string(&c.to_json())?),
    }
    Ok(rep)
}

pub fn run(c: &CertCommand) -> Result<Report> {
    match c {
        CertCommand::Verify(io) => verify(&read_json(&io.input)?),
        CertCommand::Extend { io, target } => emit("extend", load(&io.input)?.extend(*target)?, &io.out),
        CertCommand::Opposite(io) => emit("opposite", load(&io.input)?.opposite()?, &io.out),
        CertCommand::Block { io, up, down } => {
            let c = load(&io.input)?;
            match (up, down) {
                (Some(s), false) => emit("block up", c.block_up(*s)?, &io.out),
                (None, true) => emit("block down", c.block_down()?, &io.out),
                _ => bail!("give exactly one of --up s or --down"),
            }
        }
        CertCommand::Product { inputs, out } => {
            let cs = inputs.iter().map(load).collect::<Result<Vec<_>>>()?;
            emit("product", RankCertificate::product(&cs)?, out)
        }
        CertCommand::Hom { io, map } => {
            let c = load(&io.input)?;
            let phi = hom(c.ring(), map)?;
            emit(&format!("pushforward along {}", phi.name()), c.map_hom(&phi)?, &io.out)
        }
    }
}

/// Re-checks a rank certificate, an injection witness or a Følner witness.
pub fn verify(v: &Value) -> Result<Report> {
    match v.get("kind").and_then(Value::as_str) {
        Some("injection") => {
            let (g, w) = InjectionWitness::from_json(v)?;
            let ok = w.verify(&g);
            Ok(Report::new(Verdict::from_bool(ok), json!({"kind": "injection", "valid": ok}))
                .line(format!("two-to-one injection on {g}, |V| = {}, |W| = {}", w.v.len(), w.w.len()))
                .line(check_line("injective, disjoint images, translations in K", ok)))
        }
        Some("folner") => {
            let (g, w) = FolnerWitness::from_json(v)?;
            let x = SubsetPredicate::parse(&g, v.get("subset").and_then(Value::as_str).unwrap_or("G"))?;
            let ok = w.verify(&x)?;
            Ok(Report::new(Verdict::from_bool(ok), json!({"kind": "folner", "valid": ok}))
                .line(format!("Følner set for {x}: |F| = {}, counts {:?}, eps = {}", w.f.len(), w.counts, w.epsilon))
                .line(check_line("recounted |KF ∩ X| < (1+eps)|F ∩ X|", ok)))
        }
        Some(k) => bail!("unknown kind `{k}`"),
        None if v.get("ring").is_some() && v.get("A").is_some() => {
            let c = RankCertificate::from_json(v)?;
            let status = c.verify();
            Ok(Report::new(status_verdict(status), json!({"kind": "certificate", "status": status.to_string()}))
                .line(describe(&c))
                .line(format!("status: {status}")))
        }
        None => bail!("input is neither a certificate nor a witness with a \"kind\""),
    }
}

//! `ugnkit`: runs the searches, checks and certificate transformations of the
//! `ugnkit` library from the command line.
//!
//! Exit codes: 0 pass or witness found, 1 verified negative, 2 input error,
//! 3 bounded search inconclusive.

mod algebra;
mod amenable;
mod certs;
mod report;
mod repro;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use report::Report;

#[derive(Parser)]
#[command(name = "ugnkit", version, about = "Exact checks for rank certificates, Følner sets, paradoxical matchings and graded rings")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized corpora, recorded in JSON reports.
    #[arg(long, global = true, env = "UGNKIT_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Search balls (or given sets) for a Følner set `|KF∩X| < (1+ε)|F∩X|`.
    Folner(amenable::FolnerArgs),
    /// Search for a two-to-one translating injection `V → W`.
    Paradox(amenable::ParadoxArgs),
    /// Build the collapse matrices of an injection witness and check their identities.
    Collapse(amenable::CollapseArgs),
    /// Compress a translation-ring certificate to a finite one over a Følner set.
    Compress(amenable::CompressArgs),
    /// Rank certificate transformations.
    #[command(subcommand)]
    Cert(certs::CertCommand),
    /// Decide `s <= t` in C(n,k) or M(n,k,l).
    Monoid(algebra::MonoidArgs),
    /// Verify a crossed system and optionally multiply elements.
    Crossed(algebra::CrossedArgs),
    /// Build the graded matrix ring over (S, G, n, l) and check it.
    EndoGraded(algebra::EndoArgs),
    /// Check the block embedding of a freely graded Weyl algebra on a window.
    Psi(algebra::PsiArgs),
    /// Read expressions from stdin and print normal forms.
    Normalize(algebra::NormalizeArgs),
    /// Check the X, X0 subset witnesses in BS(1,k) on a ball.
    BsCheck(amenable::BsArgs),
    /// Find g with |g X ∩ u| < |g X ∩ v| in BS(1,k).
    Rosenblatt(amenable::RosenblattArgs),
    /// Re-run a named construction with its standard parameters.
    Repro(repro::ReproArgs),
    /// Re-verify a JSON certificate or witness.
    Verify(InputArgs),
}

#[derive(Args)]
pub struct InputArgs {
    /// JSON input file.
    #[arg(long = "in")]
    input: PathBuf,
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(v)? + "\n").with_context(|| format!("writing {}", path.display()))
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Folner(_) => "folner",
        Command::Paradox(_) => "paradox",
        Command::Collapse(_) => "collapse",
        Command::Compress(_) => "compress",
        Command::Cert(_) => "cert",
        Command::Monoid(_) => "monoid",
        Command::Crossed(_) => "crossed",
        Command::EndoGraded(_) => "endo-graded",
        Command::Psi(_) => "psi",
        Command::Normalize(_) => "normalize",
        Command::BsCheck(_) => "bs-check",
        Command::Rosenblatt(_) => "rosenblatt",
        Command::Repro(_) => "repro",
        Command::Verify(_) => "verify",
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Folner(a) => amenable::folner(a),
        Command::Paradox(a) => amenable::paradox(a),
        Command::Collapse(a) => amenable::collapse(a),
        Command::Compress(a) => amenable::compress(a),
        Command::Cert(c) => certs::run(c),
        Command::Monoid(a) => algebra::monoid(a),
        Command::Crossed(a) => algebra::crossed(a),
        Command::EndoGraded(a) => algebra::endo_graded(a),
        Command::Psi(a) => algebra::psi(a),
        Command::Normalize(a) => algebra::normalize(a),
        Command::BsCheck(a) => amenable::bs_check(a),
        Command::Rosenblatt(a) => amenable::rosenblatt(a),
        Command::Repro(a) => repro::run(a, cli.seed),
        Command::Verify(a) => certs::verify(&read_json(&a.input)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(rep) => {
            match cli.format {
                Format::Text => print!("{}", rep.render_text()),
                Format::Json => print!("{}", rep.render_json(name(&cli.command), cli.seed)),
            }
            ExitCode::from(rep.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

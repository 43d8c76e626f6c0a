//! `trilie`: build algebras, count and verify invariants, run the acceptance checks.

mod target;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use trilie::algebra::{algebra_to_json, invariant_count_with, RankReport};
use trilie::catalog::{verify_invariant, CatalogEntry, Certificate};
use trilie::certify::{certify_all, CertifyOptions};
use trilie::symbolic::rational::fmt_q;
use trilie::symbolic::InvariantExpr;

use target::{read_algebra, read_input, ParamArgs, Target};

#[derive(Parser, Debug)]
#[command(name = "trilie", version, about = "Coadjoint invariants of triangular Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random sample points per rank estimate.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the algebra as JSON.
    Gen {
        #[arg(required = true, num_args = 1..)]
        target: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Print the number of invariants and the generic rank of the structure matrix.
    Count {
        #[arg(required = true, num_args = 1..)]
        target: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
        /// Skip symbolic rank confirmation.
        #[arg(long)]
        no_confirm: bool,
    },
    /// Print the catalog invariants of the target.
    Invariants {
        #[arg(required = true, num_args = 1..)]
        target: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check that an invariant is annihilated by every coadjoint field of an algebra.
    Verify {
        /// Algebra JSON file, `-` for stdin.
        algebra: String,
        /// Invariant in the text grammar.
        #[arg(allow_hyphen_values = true)]
        invariant: String,
    },
    /// Run every acceptance check and print a summary table.
    CertifyAll {
        /// Also run the count-only full-rank suite for M = 10..13.
        #[arg(long)]
        slow: bool,
    },
}

/// Usage or input error; exit code 2.
struct Usage(String);

fn usage(e: impl Into<String>) -> Usage {
    Usage(e.into())
}

fn report_json(alg_name: &str, r: &RankReport) -> Value {
    json!({
        "algebra": alg_name,
        "dim": r.dim,
        "rank": r.rank,
        "count": r.count,
        "trial_ranks": r.trial_ranks,
        "confirmed": r.confirmed(),
    })
}

fn entry_json(e: &CatalogEntry) -> Value {
    let params: serde_json::Map<String, Value> = e.parameters.iter().map(|(k, v)| (k.clone(), json!(fmt_q(v)))).collect();
    json!({
        "family": e.family.id(),
        "algebra": e.algebra.name(),
        "M": e.algebra.m(),
        "f": e.algebra.f(),
        "parameters": params,
        "expected_count": e.expected_count,
        "invariants": e.invariants.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
    })
}

fn certificate_text(c: &Certificate) -> String {
    let mut out = format!("algebra: {}\ninvariant: {}\n", c.algebra, c.invariant);
    for g in &c.per_generator {
        match &g.residual {
            None => out.push_str(&format!("  {}: 0\n", g.generator)),
            Some(r) => out.push_str(&format!("  {}: {r}\n", g.generator)),
        }
    }
    out.push_str(if c.pass { "pass\n" } else { "FAIL\n" });
    out
}

fn run(cli: &Cli) -> Result<(String, bool), Usage> {
    let trials = cli.trials as usize;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Gen { target, params } => {
            let alg = Target::parse(target, params).and_then(|t| t.algebra()).map_err(usage)?;
            Ok((algebra_to_json(&alg) + "\n", true))
        }
        Command::Count { target, params, no_confirm } => {
            let alg = Target::parse(target, params).and_then(|t| t.algebra()).map_err(usage)?;
            let r = invariant_count_with(&alg, trials, cli.seed, !no_confirm);
            let text = if json { serde_json::to_string_pretty(&report_json(alg.name(), &r)).unwrap() } else { r.to_string() };
            Ok((text + "\n", true))
        }
        Command::Invariants { target, params } => {
            let entry = Target::parse(target, params).and_then(|t| t.entry()).map_err(usage)?;
            let text = if json {
                serde_json::to_string_pretty(&entry_json(&entry)).unwrap() + "\n"
            } else {
                let mut s = format!("{} [{}], {} invariant(s)\n", entry.algebra.name(), entry.family.id(), entry.expected_count);
                for inv in &entry.invariants {
                    s.push_str(&format!("{inv}\n"));
                }
                s
            };
            Ok((text, true))
        }
        Command::Verify { algebra, invariant } => {
            let alg = read_algebra(algebra).map_err(usage)?;
            let text = if invariant == "-" { read_input("-").map_err(usage)? } else { invariant.clone() };
            let expr: InvariantExpr = text.trim().parse().map_err(|e| usage(format!("invariant: {e}")))?;
            if let Some(v) = expr.variables().into_iter().find(|v| !alg.universe().contains(*v)) {
                return Err(usage(format!("invariant uses {v}, which is not a coordinate of {}", alg.name())));
            }
            let cert = verify_invariant(&alg, &expr);
            let out = if json { cert.to_json() + "\n" } else { certificate_text(&cert) };
            Ok((out, cert.pass))
        }
        Command::CertifyAll { slow } => {
            let opts = CertifyOptions { seed: cli.seed, trials, slow: *slow, ..CertifyOptions::default() };
            let results = certify_all(&opts);
            let pass = results.iter().all(|r| r.pass);
            let text = if json {
                serde_json::to_string_pretty(&json!({ "pass": pass, "criteria": results })).unwrap() + "\n"
            } else {
                let mut s: String = results.iter().map(|r| format!("{r}\n")).collect();
                let passed = results.iter().filter(|r| r.pass).count();
                s.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
                s
            };
            Ok((text, pass))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{path}: {e}")),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, pass)) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Batch front-end: loads model files, runs selected law suites, and emits
//! deterministic human- and machine-readable reports.
//!
//! Exit codes: 0 all checks pass, 1 a check or validation failed, 2 input
//! error (malformed JSON, bad rationals, dangling references).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use cstop_core::csb::CsbKind;
use cstop_core::model::{is_input_error, parse_document, resolve};
use cstop_core::suites::{run_suite_with_law, SUITES};
use cstop_core::{generate, Error};

#[derive(Parser)]
#[command(name = "cstop", version, about = "Law checker for complemented-subset topology models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a model document: schema, cross-references, carrier and
    /// metric axioms, subset extensionality, complemented disjointness.
    Validate { file: PathBuf },
    /// Run a law suite against a model document.
    Check {
        /// One of the suite names; `all` runs every suite; `csb` is an
        /// alias for `csb-laws`.
        suite: String,
        file: PathBuf,
        /// Sample count for sampled checks (line and large-family cases).
        #[arg(long, default_value_t = 64)]
        samples: u64,
        /// Seed for every sampled or randomized check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Continuity-law strength for the csb suites
        /// (plain | pointwise | uniform).
        #[arg(long)]
        law: Option<String>,
        /// Emit the canonical JSON report on stdout instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Generate a model document on stdout.
    Generate {
        /// One of: random-metric, random-carrier, enumerate-cs.
        kind: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// For random-carrier: use the discrete inequality.
        #[arg(long)]
        discrete: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_input_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Model(format!("read {}: {e}", file.display())))?;
            let doc = parse_document(&text)?;
            resolve(&doc)?;
            println!("ok: {} validates", file.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            suite,
            file,
            samples,
            seed,
            law,
            json,
        } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Model(format!("read {}: {e}", file.display())))?;
            let doc = parse_document(&text)?;
            let model = resolve(&doc)?;
            let suite = if suite == "csb" { "csb-laws".to_string() } else { suite };
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if let Some(pos) = SUITES.iter().position(|s| *s == suite) {
                vec![SUITES[pos]]
            } else {
                return Err(Error::Model(format!(
                    "unknown suite {suite:?}; expected one of {SUITES:?} or \"all\""
                )));
            };
            let law = law
                .as_deref()
                .map(|l| match l {
                    "plain" => Ok(CsbKind::Plain),
                    "pointwise" => Ok(CsbKind::Pointwise),
                    "uniform" => Ok(CsbKind::Uniform),
                    other => Err(Error::Model(format!(
                        "unknown law {other:?}; expected plain, pointwise or uniform"
                    ))),
                })
                .transpose()?;
            let started = Instant::now();
            let mut all_ok = true;
            let mut reports = Vec::new();
            for name in names {
                let rep = run_suite_with_law(name, &model, seed, samples, law)?;
                all_ok &= rep.all_pass();
                reports.push(rep);
            }
            if json {
                // the canonical report: deterministic for fixed
                // (document, seed, samples); timing goes to stderr only
                let body = if reports.len() == 1 {
                    reports[0].to_json()
                } else {
                    serde_json::to_string_pretty(&reports).expect("reports serialize")
                };
                println!("{body}");
            } else {
                for rep in &reports {
                    for line in rep.human_lines() {
                        println!("{line}");
                    }
                }
            }
            eprintln!("elapsed: {:?}", started.elapsed());
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Generate {
            kind,
            n,
            seed,
            discrete,
        } => {
            let doc = match kind.as_str() {
                "random-metric" => generate::random_metric(n, seed)?,
                "random-carrier" => generate::random_carrier(n, seed, discrete)?,
                "enumerate-cs" => generate::enumerate_cs(n)?,
                other => {
                    return Err(Error::Model(format!(
                        "unknown generator {other:?}; expected random-metric, random-carrier or enumerate-cs"
                    )))
                }
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("document serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

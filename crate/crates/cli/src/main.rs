//! `irredcert`: certify, replay and inspect representation irreducibility.
//!
//! Every command prints one JSON document on stdout. Exit status is 0 when
//! the question was decided, 2 when the answer is inconclusive and 1 on
//! error or a failed verification.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use irredcert_core::certify::Conclusion;
use irredcert_core::lattice::{self, integral_base, PrimeSpec};
use irredcert_core::meataxe::{self, MeataxeConfig, StatusTag};
use irredcert_core::rep::vector_strings;
use irredcert_core::{cohomology, oracle, Certificate, CertifyConfig, Error, Exec, Representation};

#[derive(Parser)]
#[command(name = "irredcert", version, about = "Irreducibility certificates for integral group representations")]
struct Cli {
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Sampling {
    /// MeatAxe seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// MeatAxe samples per run.
    #[arg(long, default_value_t = meataxe::DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Certify irreducibility over Q or Q(t).
    Certify {
        rep: PathBuf,
        /// Comma-separated primes, e.g. `2,3,5` or `(2,t-0),(t-0)`.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<String>>,
        #[command(flatten)]
        sampling: Sampling,
        /// Saturation rounds before giving up on an integral model.
        #[arg(long, default_value_t = lattice::DEFAULT_ROUNDS)]
        rounds: usize,
        /// Cross-check each finite-field verdict by exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Replay a certificate.
    Verify { cert: PathBuf, rep: PathBuf },
    /// Reduce the saturated integral model at a prime.
    Reduce {
        rep: PathBuf,
        #[arg(long)]
        prime: String,
    },
    /// Run the MeatAxe over the representation's field.
    Meataxe {
        rep: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Deformation obstruction data over a finite field.
    Obstruction {
        rep: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Enumerate every invariant subspace over a small finite field.
    Oracle { rep: PathBuf },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Check(String),
}

type CliResult = Result<(Value, ExitCode), CliError>;

const DECIDED: u8 = 0;
const FAILED: u8 = 1;
const INCONCLUSIVE: u8 = 2;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_rep(path: &Path) -> Result<Representation, CliError> {
    Ok(Representation::from_json(&read(path)?)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn oracle_checks(cert: &Certificate, rep: &Representation, exec: Exec) -> Result<Vec<Value>, CliError> {
    let base = integral_base(rep.ring())?;
    let sat = lattice::saturate(rep, cert.config.saturation_rounds)?;
    let mut out = Vec::new();
    for step in &cert.steps {
        let irredcert_core::certify::StepOutcome::Verdict(v) = &step.outcome else { continue };
        let prime = PrimeSpec::parse(&base, &step.prime)?;
        let reduced = lattice::reduce(&sat.int_rep, &sat.lattice, &prime)?;
        match oracle::count_invariant(&reduced, exec) {
            Ok(count) => {
                let agrees = match v.status {
                    StatusTag::Irreducible => count == 2,
                    StatusTag::Reducible => count > 2,
                    StatusTag::Inconclusive => true,
                };
                if !agrees {
                    return Err(CliError::Check(format!("oracle disagrees with the MeatAxe at {}", step.prime)));
                }
                out.push(json!({ "prime": step.prime, "meataxe": v.status, "invariant_subspaces": count, "agrees": true }));
            }
            Err(Error::SizeBound(msg)) => out.push(json!({ "prime": step.prime, "skipped": msg })),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> CliResult {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match cli.command {
        Command::Certify { rep, primes, sampling, rounds, oracle } => {
            let rep = load_rep(&rep)?;
            let cfg = CertifyConfig { primes, seed: sampling.seed, budget: sampling.budget, saturation_rounds: rounds };
            let cert = irredcert_core::certify(&rep, &cfg, exec)?;
            let code = match cert.conclusion {
                Conclusion::Inconclusive { .. } => INCONCLUSIVE,
                _ => DECIDED,
            };
            let out = if oracle {
                json!({ "certificate": to_value(&cert), "oracle": oracle_checks(&cert, &rep, exec)? })
            } else {
                to_value(&cert)
            };
            Ok((out, ExitCode::from(code)))
        }
        Command::Verify { cert, rep } => {
            let text = read(&cert)?;
            let value: Value = serde_json::from_str(&text).map_err(Error::from)?;
            let inner = value.get("certificate").cloned().unwrap_or(value);
            let cert: Certificate = serde_json::from_value(inner).map_err(Error::from)?;
            let rep = load_rep(&rep)?;
            let valid = irredcert_core::verify(&cert, &rep)?;
            let code = if valid { DECIDED } else { FAILED };
            Ok((json!({ "valid": valid, "conclusion": to_value(&cert.conclusion) }), ExitCode::from(code)))
        }
        Command::Reduce { rep, prime } => {
            let rep = load_rep(&rep)?;
            let base = integral_base(rep.ring())?;
            let p = PrimeSpec::parse(&base, &prime)?;
            let sat = lattice::saturate(&rep, lattice::DEFAULT_ROUNDS)?;
            let reduced = lattice::reduce(&sat.int_rep, &sat.lattice, &p)?;
            Ok((
                json!({
                    "prime": p.to_string(),
                    "residue_field": p.residue_field().to_string(),
                    "lattice": sat.lattice.to_strings(),
                    "representation": to_value(&reduced.to_file()),
                }),
                ExitCode::from(DECIDED),
            ))
        }
        Command::Meataxe { rep, sampling } => {
            let rep = load_rep(&rep)?;
            let verdict = meataxe::is_irreducible(&rep, &MeataxeConfig { seed: sampling.seed, budget: sampling.budget });
            let code = if verdict.status.tag() == StatusTag::Inconclusive { INCONCLUSIVE } else { DECIDED };
            let k_rep = rep.over_fraction_field();
            let mut out = to_value(&verdict.record());
            out["endo_dim"] = json!(meataxe::endo_dim(&k_rep, exec));
            Ok((out, ExitCode::from(code)))
        }
        Command::Obstruction { rep, sampling } => {
            let rep = load_rep(&rep)?;
            let cfg = MeataxeConfig { seed: sampling.seed, budget: sampling.budget };
            let report = cohomology::obstruction_report(&rep, &cfg, exec)?;
            Ok((to_value(&report), ExitCode::from(DECIDED)))
        }
        Command::Oracle { rep } => {
            let rep = load_rep(&rep)?;
            let subs = oracle::invariant_subspaces(&rep, exec)?;
            let list: Vec<Value> = subs
                .iter()
                .map(|s| json!({ "dim": s.dim(), "basis": s.basis().iter().map(|v| vector_strings(v)).collect::<Vec<_>>() }))
                .collect();
            Ok((json!({ "count": subs.len(), "irreducible": subs.len() == 2, "subspaces": list }), ExitCode::from(DECIDED)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match run(cli) {
        Ok(ok) => ok,
        Err(e) => (json!({ "error": e.to_string() }), ExitCode::from(FAILED)),
    };
    let text = serde_json::to_string_pretty(&value).expect("serializable");
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    code
}

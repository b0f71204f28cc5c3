use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use specht::eigenspace::LadderClass;
use specht::fock::llt_canonical;
use specht::partition::check_prime;
use specht::tableau::WordStrategy;
use specht::verify::{consistency_check, conjecture_check, gram_oracle_dim_d_with};
use specht::Partition;

/// Canonical bases, seminormal-form ranks and decomposition matrices for
/// the symmetric group in characteristic p.
#[derive(Parser, Debug)]
#[command(name = "specht", version)]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, env = "SPECHT_JOBS")]
    jobs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Lift the enumeration guards (tableau class and full-Gram size limits).
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// First approximations A(μ), canonical basis G(μ) and n_λμ(q).
    Fock(SizeArgs),
    /// Gram report for the symmetrized eigenspace of μ inside S(τ).
    Rank {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        tau: Partition,
        /// Use the rightmost-descent reduced words.
        #[arg(long)]
        rightmost: bool,
    },
    /// Verify the multiplicity identities and emit the decomposition matrix.
    Verify {
        #[command(flatten)]
        size: SizeArgs,
        /// Acknowledge running with n ≥ p².
        #[arg(long)]
        outside_region: bool,
        /// Also cross-check against full-Gram dimensions of the simple modules.
        #[arg(long)]
        consistency: bool,
    },
    /// dim D(τ) as the p-rank of the full Gram matrix of S(τ).
    Oracle {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        tau: Partition,
    },
}

#[derive(Args, Debug)]
struct SizeArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
}

/// Process outcome besides the written report.
enum Status {
    Pass,
    CheckFailed,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct InvalidInput(String);

impl std::fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

fn lib<T>(r: specht::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| {
        if e.is_input_error() {
            anyhow::Error::new(InvalidInput(e.to_string()))
        } else {
            anyhow::Error::new(e)
        }
    })
}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(InvalidInput(msg.into()))
}

fn json_only(format: Format, what: &str) -> anyhow::Result<()> {
    if format == Format::Csv {
        return Err(invalid(format!("csv output is only available for verify, not {what}")));
    }
    Ok(())
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> anyhow::Result<(String, Status)> {
    match &cli.command {
        Command::Fock(SizeArgs { p, n }) => {
            json_only(cli.format, "fock")?;
            lib(check_prime(*p))?;
            let table = lib(llt_canonical(*n, *p))?;
            Ok((render(&table.to_json()), Status::Pass))
        }
        Command::Rank { p, mu, tau, rightmost } => {
            json_only(cli.format, "rank")?;
            lib(check_prime(*p))?;
            if mu.size() != tau.size() {
                return Err(invalid(format!("|μ| = {} but |τ| = {}", mu.size(), tau.size())));
            }
            let strategy = if *rightmost {
                WordStrategy::RightmostDescent
            } else {
                WordStrategy::LeftmostDescent
            };
            let class = lib(LadderClass::with_limit(mu, *p, cli.allow_large))?;
            let report = lib(class.gram_report(tau, strategy))?;
            Ok((render(&report.to_json()), Status::Pass))
        }
        Command::Verify {
            size: SizeArgs { p, n },
            outside_region,
            consistency,
        } => {
            lib(check_prime(*p))?;
            if (*n as u64) >= p * p && !outside_region {
                return Err(invalid(format!(
                    "n = {n} is not below p² = {}; pass --outside-region to run anyway",
                    p * p
                )));
            }
            let report = lib(conjecture_check(*n, *p))?;
            let consistency = if *consistency && report.overall {
                Some(lib(consistency_check(&report))?)
            } else {
                None
            };
            let pass = report.overall && consistency.as_ref().is_none_or(|c| c.ok);
            let status = if pass { Status::Pass } else { Status::CheckFailed };
            let text = match cli.format {
                Format::Json => {
                    let mut value = report.to_json();
                    if let Some(c) = &consistency {
                        value["consistency"] = c.to_json();
                    }
                    render(&value)
                }
                Format::Csv => match &report.decomposition {
                    Some(d) => d.to_csv(),
                    None => bail!("verification failed for n = {n}, p = {p}; no decomposition matrix"),
                },
            };
            Ok((text, status))
        }
        Command::Oracle { p, tau } => {
            json_only(cli.format, "oracle")?;
            let dim = lib(gram_oracle_dim_d_with(tau, *p, cli.allow_large))?;
            let value = json!({ "tau": tau.to_string(), "p": p, "dim": dim });
            Ok((render(&value), Status::Pass))
        }
    }
}

#[cfg(feature = "parallel")]
fn run_with_jobs(cli: &Cli) -> anyhow::Result<(String, Status)> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(invalid("--jobs must be at least 1"));
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().context("building the worker pool")?;
    pool.install(|| run(cli))
}

#[cfg(not(feature = "parallel"))]
fn run_with_jobs(cli: &Cli) -> anyhow::Result<(String, Status)> {
    if cli.jobs == Some(0) {
        return Err(invalid("--jobs must be at least 1"));
    }
    run(cli)
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run_with_jobs(&cli).and_then(|(text, status)| {
        emit(&cli, &text)?;
        Ok(status)
    });
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => {
            eprintln!("specht: check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("specht: {e:#}");
            if e.downcast_ref::<InvalidInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

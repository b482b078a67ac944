//! Command-line front end. Reports go to stdout as JSON, summaries to stderr.
//! Exit status: 0 when everything verified, 1 on a verification failure,
//! 2 on an input error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pcgl::io::{parse_index_list, parse_presentation, presentation_to_json, read_input};
use pcgl::report::{self, error_json, Report};
use pcgl::symmetric::gamma_chain;
use pcgl::{ErrorClass, PcglError, Presentation, Result};

#[derive(Parser)]
#[command(
    name = "pcgl",
    version,
    about = "Cluster structures of symmetric Poisson-CGL extensions"
)]
struct Cli {
    /// Iteration bound for the local nilpotence check.
    #[arg(long, global = true)]
    max_nilpotence_iters: Option<usize>,
    /// Worker threads for per-permutation computations.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest number of generators for which all of Gamma_N is enumerated.
    #[arg(long, global = true, env = "PCGL_MAX_N", default_value_t = 12)]
    max_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a presentation.
    Validate { file: String },
    /// Level sets, prime elements, rank and q.
    Analyze { file: String },
    /// Reverse presentation, d-integers, interval primes and u-elements.
    Symmetric { file: String },
    /// Normalize generators so that every pi equals 1.
    Rescale {
        file: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Seeds for one permutation or for all of Gamma_N.
    Seeds {
        file: String,
        #[arg(long, conflicts_with = "gamma")]
        tau: Option<String>,
        #[arg(long)]
        gamma: bool,
    },
    /// The exchange matrix of one permutation.
    Btilde {
        file: String,
        #[arg(long)]
        tau: String,
    },
    /// Mutate the seed of a permutation in one direction.
    Mutate {
        file: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        at: usize,
    },
    /// Verify every adjacent pair of Gamma_N.
    ChainVerify { file: String },
    /// Upper cluster membership certificate for an element.
    Membership {
        file: String,
        #[arg(long)]
        elem: String,
        #[arg(long, default_value = "")]
        inv: String,
    },
    /// Emit a built-in presentation.
    Preset {
        #[command(subcommand)]
        kind: PresetKind,
    },
}

#[derive(Subcommand)]
enum PresetKind {
    /// The matrix Poisson algebra of m x n matrices.
    Matrix {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<String>,
    },
}

fn load(file: &str) -> Result<Presentation> {
    parse_presentation(&read_input(file)?)
}

fn write_file(path: &str, text: &str) -> Result<()> {
    std::fs::write(path, format!("{text}\n")).map_err(|e| PcglError::Input(format!("writing {path}: {e}")))
}

fn check_cap(p: &Presentation, cap: usize) -> Result<()> {
    if p.n() > cap {
        return Err(PcglError::Input(format!(
            "{} generators exceed the enumeration cap {cap} (set PCGL_MAX_N)",
            p.n()
        )));
    }
    Ok(())
}

fn tau_arg(s: &str, n: usize) -> Result<Vec<usize>> {
    let t = parse_index_list(s)?;
    if t.len() != n {
        return Err(PcglError::Input(format!("tau must list {n} entries")));
    }
    Ok(t)
}

fn run(cli: &Cli) -> Result<Report> {
    let bound = cli.max_nilpotence_iters;
    match &cli.command {
        Command::Validate { file } => Ok(report::validate_report(&load(file)?, bound)),
        Command::Analyze { file } => report::analyze_report(&load(file)?, bound),
        Command::Symmetric { file } => report::symmetric_report(&load(file)?, bound),
        Command::Rescale { file, output } => {
            let (rep, p) = report::rescale_report(&load(file)?, bound)?;
            if let Some(path) = output {
                write_file(path, &presentation_to_json(&p))?;
            }
            Ok(rep)
        }
        Command::Seeds { file, tau, gamma } => {
            let p = load(file)?;
            let taus = match (tau, gamma) {
                (Some(t), _) => vec![tau_arg(t, p.n())?],
                (None, true) => {
                    check_cap(&p, cli.max_n)?;
                    gamma_chain(p.n()).elements
                }
                (None, false) => vec![(0..p.n()).collect()],
            };
            report::seeds_report(&report::prepare(&p, bound)?, &taus)
        }
        Command::Btilde { file, tau } => {
            let p = load(file)?;
            let t = tau_arg(tau, p.n())?;
            report::btilde_report(&report::prepare(&p, bound)?, &t)
        }
        Command::Mutate { file, tau, at } => {
            let p = load(file)?;
            let t = tau_arg(tau, p.n())?;
            let k = at
                .checked_sub(1)
                .ok_or_else(|| PcglError::Input("--at is 1-based".into()))?;
            report::mutate_report(&report::prepare(&p, bound)?, &t, k)
        }
        Command::ChainVerify { file } => {
            let p = load(file)?;
            check_cap(&p, cli.max_n)?;
            report::chain_report(&report::prepare(&p, bound)?)
        }
        Command::Membership { file, elem, inv } => {
            let p = load(file)?;
            check_cap(&p, cli.max_n)?;
            let inv = parse_index_list(inv)?;
            report::membership_report(&report::prepare(&p, bound)?, elem, &inv)
        }
        Command::Preset {
            kind: PresetKind::Matrix { m, n, output },
        } => {
            if *m == 0 || *n == 0 {
                return Err(PcglError::Input("m and n must be positive".into()));
            }
            let p = pcgl::presets::build_matrix_poisson(*m, *n);
            let text = presentation_to_json(&p);
            if let Some(path) = output {
                write_file(path, &text)?;
            }
            let json = serde_json::from_str(&text).expect("valid JSON");
            Ok(Report {
                json,
                summary: format!("matrix preset {m} x {n}"),
                verified: true,
            })
        }
    }
}

/// Prints a JSON document; a closed pipe downstream is not an error.
fn emit(v: &serde_json::Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
    {
        eprintln!("thread pool: {e}");
    }
    match run(&cli) {
        Ok(rep) => {
            let quiet_preset = matches!(
                &cli.command,
                Command::Preset {
                    kind: PresetKind::Matrix { output: Some(_), .. }
                }
            );
            if !quiet_preset {
                emit(&rep.json);
            }
            eprintln!("{}", rep.summary);
            if rep.verified {
                ExitCode::SUCCESS
            } else {
                let input_failure = rep
                    .json
                    .get("failures")
                    .is_some_and(|f| f.as_array().is_some_and(|a| !a.is_empty()));
                ExitCode::from(if input_failure { 2 } else { 1 })
            }
        }
        Err(e) => {
            emit(&serde_json::json!({"error": error_json(&e)}));
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(match e.class() {
                ErrorClass::Input => 2,
                ErrorClass::Verification => 1,
            })
        }
    }
}

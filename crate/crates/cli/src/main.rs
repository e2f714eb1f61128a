//! `hwp` — command-line driver for the two-cycle-length factorization
//! solver: solve single instances, verify certificate files, sweep whole
//! parameter families, and audit the embedded tables.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use hwp_core::circulant::{ham_decompose, Circulant};
use hwp_core::cmn::{solve_cmn, CmnRequest};
use hwp_core::compose::{hw_solve, multipartite_solve, HwRequest};
use hwp_core::seqs::{SequenceKind, SequenceSpec};
use hwp_core::{verify, FactorizationCertificate, SolveOutcome};

/// Exit codes shared by the solving subcommands.
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_NONEXISTENT: u8 = 4;
const EXIT_OPEN: u8 = 5;
const EXIT_INGREDIENT: u8 = 6;
const EXIT_MISMATCH: u8 = 7;

#[derive(Parser)]
#[command(name = "hwp", version, about = "Two cycle lengths, one graph: solve and verify")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance and optionally write its certificate.
    Solve(SolveArgs),
    /// Check a certificate file against its own graph description.
    Verify {
        /// Certificate JSON file.
        file: PathBuf,
    },
    /// Solve a whole (alpha, beta) family and emit a CSV report.
    Sweep(SweepArgs),
    /// Re-audit every embedded table.
    TablesValidate,
    /// Low-level entry points for single building blocks.
    #[command(subcommand)]
    Debug(DebugCmd),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    /// Number of frame groups; 1 means the complete graph K_{mn}.
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long)]
    alpha: u32,
    #[arg(long)]
    beta: u32,
    /// Host: complete graph of order mnt, or the multipartite K_t[mn].
    #[arg(long, default_value_t = false)]
    multipartite: bool,
    /// Write the certificate here on success.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Recorded in certificate metadata; all searches are deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long, default_value_t = false)]
    multipartite: bool,
    /// CSV output path (defaults to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for per-instance certificates.
    #[arg(long)]
    cert_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DebugCmd {
    /// Generate one distance-partition sequence and print it.
    Seq {
        /// skolem | hooked-skolem | langford | hooked-langford
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1)]
        defect: u32,
        #[arg(long)]
        order: u32,
    },
    /// Decompose a two-difference circulant into Hamiltonian cycles.
    Circulant {
        #[arg(long)]
        n: u32,
        /// Connection differences, repeatable.
        #[arg(long = "d", required = true)]
        ds: Vec<u32>,
    },
    /// Split one C_m[n] instance.
    SolveCmn {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Verify { file } => cmd_verify(&file),
        Cmd::Sweep(args) => cmd_sweep(args),
        Cmd::TablesValidate => cmd_tables_validate(),
        Cmd::Debug(d) => cmd_debug(d),
    }
}

/// Maps a solve outcome to its exit code, printing a one-line summary.
fn report_outcome(outcome: &SolveOutcome, out: Option<&PathBuf>) -> Result<ExitCode> {
    match outcome {
        SolveOutcome::Solved(cert) => {
            let counts = cert.counts();
            let shape: Vec<String> = counts
                .iter()
                .map(|(len, k)| format!("{k} x C_{len}"))
                .collect();
            if let Some(path) = out {
                fs::write(path, serde_json::to_vec_pretty(cert)?)
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("solved: {} -> {}", shape.join(" + "), path.display());
            } else {
                println!("solved: {}", shape.join(" + "));
            }
            Ok(ExitCode::SUCCESS)
        }
        SolveOutcome::Infeasible { reason } => {
            println!("infeasible: {reason}");
            Ok(ExitCode::from(EXIT_INFEASIBLE))
        }
        SolveOutcome::KnownNonexistent { citation } => {
            println!("known nonexistent: {citation}");
            Ok(ExitCode::from(EXIT_NONEXISTENT))
        }
        SolveOutcome::OpenException { citation } => {
            println!("open exception: {citation}");
            Ok(ExitCode::from(EXIT_OPEN))
        }
        SolveOutcome::IngredientUnavailable { request } => {
            println!(
                "ingredient unavailable: {}",
                serde_json::to_string(request)?
            );
            Ok(ExitCode::from(EXIT_INGREDIENT))
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let req = HwRequest::new(args.m, args.n, args.t, args.alpha, args.beta)?;
    let mut outcome = if args.multipartite {
        multipartite_solve(&req)?
    } else {
        hw_solve(&req)?
    };
    if let SolveOutcome::Solved(cert) = &mut outcome {
        cert.metadata
            .insert("seed".into(), serde_json::Value::from(args.seed));
    }
    report_outcome(&outcome, args.out.as_ref())
}

fn cmd_verify(file: &PathBuf) -> Result<ExitCode> {
    let bytes = match fs::read(file) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return Ok(ExitCode::from(2));
        }
    };
    let cert: FactorizationCertificate = match serde_json::from_slice(&bytes) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {} is not a certificate: {e}", file.display());
            return Ok(ExitCode::from(2));
        }
    };
    let report = verify(&cert);
    println!("{}", serde_json::to_string_pretty(&report)?);
    if report.is_accept() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    let _ = args;
    eprintln!("error: sweep is not wired up yet in this build");
    Ok(ExitCode::from(2))
}

fn cmd_tables_validate() -> Result<ExitCode> {
    eprintln!("error: table audit is not wired up yet in this build");
    Ok(ExitCode::from(2))
}

fn cmd_debug(cmd: DebugCmd) -> Result<ExitCode> {
    match cmd {
        DebugCmd::Seq { kind, defect, order } => {
            let kind = match kind.as_str() {
                "skolem" => SequenceKind::Skolem,
                "hooked-skolem" => SequenceKind::HookedSkolem,
                "langford" => SequenceKind::Langford,
                "hooked-langford" => SequenceKind::HookedLangford,
                other => anyhow::bail!("unknown sequence kind {other:?}"),
            };
            let spec = SequenceSpec::new(kind, defect, order)?;
            let seq = hwp_core::seqs::generate(&spec)?;
            println!("{:?}", seq.values);
            for t in hwp_core::seqs::induced_triples(&seq) {
                println!("triple: {:?}", t.entries());
            }
            Ok(ExitCode::SUCCESS)
        }
        DebugCmd::Circulant { n, ds } => {
            let c = Circulant::new(n, ds)?;
            for h in ham_decompose(&c)? {
                println!("{:?}", h.order);
            }
            Ok(ExitCode::SUCCESS)
        }
        DebugCmd::SolveCmn { m, n, alpha, out } => {
            let outcome = solve_cmn(&CmnRequest::new(m, n, alpha)?)?;
            report_outcome(&outcome, out.as_ref())
        }
    }
}

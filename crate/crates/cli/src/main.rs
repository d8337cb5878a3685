use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Result;
use clap::{Parser, Subcommand};
use nicheck::ic3::EngineOptions;
use nicheck::oracle::Certification;
use nicheck::replacement::PredMode;
use nicheck::selfcomp::Expected;
use nicheck_cli::{error_exit_code, run_benchgen, run_bmc, run_certify, run_check, run_matrix, MatrixConfig, RunConfig};

#[derive(Parser)]
#[command(name = "nicheck", version, about = "Non-interference model checking with a symmetry-aware IC3 engine")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Prove or refute the property of an AIGER circuit.
    Check {
        circuit: PathBuf,
        /// Pairing sidecar describing the two copies.
        #[arg(long)]
        pairing: Option<PathBuf>,
        /// Also block the mirror of every learned cube.
        #[arg(long)]
        symmetry: bool,
        #[arg(long, default_value = "none")]
        pred: PredMode,
        /// Re-test every mirrored cube before blocking it.
        #[arg(long)]
        audit_symmetric: bool,
        /// Re-check the frame conditions after every block and propagate step.
        #[arg(long)]
        audit_frames: bool,
        /// Validate every SAT model and core.
        #[arg(long)]
        sat_checks: bool,
        #[arg(long)]
        timeout_s: Option<f64>,
        #[arg(long)]
        max_frames: Option<usize>,
        #[arg(long)]
        max_obligations: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Write a self-composed benchmark as <prefix>.aag and <prefix>.pair.
    Benchgen {
        family: String,
        size: usize,
        /// Drop the input assumption that makes the design non-interfering.
        #[arg(long)]
        unconstrained: bool,
        /// Omit the inequivalence predicate latches.
        #[arg(long)]
        plain: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run all eight configurations over several sizes of one family.
    Matrix {
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        unconstrained: bool,
        #[arg(long)]
        timeout_s: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        audit_symmetric: bool,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check an invariant certificate against a circuit.
    Certify { circuit: PathBuf, certificate: PathBuf },
    /// Search for a counterexample of at most `bound` transitions.
    Bmc {
        circuit: PathBuf,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

fn timeout(secs: Option<f64>) -> Result<Option<Duration>> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|_| nicheck_cli::UsageError(format!("invalid timeout {s}")).into()))
        .transpose()
}

fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Check {
            circuit,
            pairing,
            symmetry,
            pred,
            audit_symmetric,
            audit_frames,
            sat_checks,
            timeout_s,
            max_frames,
            max_obligations,
            seed,
            stats,
            certificate,
            witness,
        } => {
            let cfg = RunConfig {
                circuit,
                pairing,
                engine: EngineOptions {
                    symmetry,
                    pred,
                    audit_symmetric,
                    audit_frames,
                    sat_checks,
                    seed,
                    timeout: timeout(timeout_s)?,
                    max_frames,
                    max_obligations,
                },
                certificate,
                witness,
                stats,
            };
            let (outcome, _) = run_check(&cfg)?;
            println!("{outcome}");
            Ok(outcome.exit_code())
        }
        Cmd::Benchgen { family, size, unconstrained, plain, out } => {
            let expected = run_benchgen(&family, size, !unconstrained, !plain, &out)?;
            println!("expected={}", if expected == Expected::Safe { "SAFE" } else { "UNSAFE" });
            Ok(0)
        }
        Cmd::Matrix { family, sizes, unconstrained, timeout_s, seed, audit_symmetric, jobs, out_dir } => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let cfg = MatrixConfig {
                family,
                sizes,
                constrained: !unconstrained,
                timeout: timeout(timeout_s)?,
                seed,
                audit_symmetric,
                jobs,
                out_dir,
            };
            let (_, table) = run_matrix(&cfg)?;
            print!("{table}");
            Ok(0)
        }
        Cmd::Certify { circuit, certificate } => match run_certify(&circuit, &certificate)? {
            Certification::Pass => {
                println!("PASS");
                Ok(0)
            }
            Certification::Fail { check, state, inputs } => {
                let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
                println!("FAIL {check:?} state={} inputs={}", bits(&state), bits(&inputs));
                Ok(1)
            }
        },
        Cmd::Bmc { circuit, bound, witness } => match run_bmc(&circuit, bound, witness.as_deref())? {
            Some(t) => {
                println!("UNSAFE(depth={})", t.inputs.len() - 1);
                Ok(1)
            }
            None => {
                println!("UNKNOWN(bound={bound})");
                Ok(2)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 10 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}

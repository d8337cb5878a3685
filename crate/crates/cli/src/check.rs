use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::Result;
use nicheck::ic3::{check, CheckResult, EngineError, EngineOptions, Stats, Trace, Verdict};
use nicheck::oracle::{bmc, certify, Certificate, Certification};
use nicheck::replacement::PredMode;
use nicheck::SymmetryMap;

use crate::witness::write_witness;
use crate::{read_circuit, read_pairing, usage, write_file};

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub circuit: PathBuf,
    pub pairing: Option<PathBuf>,
    pub engine: EngineOptions,
    pub certificate: Option<PathBuf>,
    pub witness: Option<PathBuf>,
    pub stats: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Safe,
    Unsafe,
    Unknown { bound: usize },
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Safe => 0,
            Outcome::Unsafe => 1,
            Outcome::Unknown { .. } => 2,
        }
    }

    pub fn of(v: &Verdict) -> Outcome {
        match v {
            Verdict::Safe { .. } => Outcome::Safe,
            Verdict::Unsafe { .. } => Outcome::Unsafe,
            Verdict::Unknown { bound, .. } => Outcome::Unknown { bound: *bound },
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Safe => f.write_str("SAFE"),
            Outcome::Unsafe => f.write_str("UNSAFE"),
            Outcome::Unknown { bound } => write!(f, "UNKNOWN(bound={bound})"),
        }
    }
}

/// Runs the engine on one circuit and writes the requested artifacts.
pub fn run_check(cfg: &RunConfig) -> Result<(Outcome, Stats)> {
    let c = read_circuit(&cfg.circuit)?;
    let map = match &cfg.pairing {
        Some(p) => read_pairing(p, &c)?,
        None if cfg.engine.symmetry => return Err(usage("--symmetry needs a pairing file")),
        None => SymmetryMap::trivial(c.num_latches()),
    };
    if cfg.engine.pred != PredMode::None && !map.has_predicates() {
        return Err(usage(format!("--pred={} needs neq bindings in the pairing file", cfg.engine.pred.name())));
    }
    let CheckResult { verdict, stats } = check(&c, &map, &cfg.engine).map_err(|e| match e {
        EngineError::Internal(_) => anyhow::Error::new(e),
        other => usage(other.to_string()),
    })?;
    let outcome = Outcome::of(&verdict);
    match &verdict {
        Verdict::Safe { invariant, .. } => {
            if let Some(p) = &cfg.certificate {
                write_file(p, &Certificate::from_invariant(&c, invariant).write())?;
            }
        }
        Verdict::Unsafe { trace } => {
            if let Some(p) = &cfg.witness {
                write_file(p, &write_witness(&c, trace))?;
            }
        }
        Verdict::Unknown { .. } => {}
    }
    if let Some(p) = &cfg.stats {
        write_file(p, &format!("result={outcome}\n{}", stats.to_kv()))?;
    }
    Ok((outcome, stats))
}

pub fn run_certify(circuit: &Path, certificate: &Path) -> Result<Certification> {
    let c = read_circuit(circuit)?;
    let text = std::fs::read_to_string(certificate)
        .map_err(|e| usage(format!("cannot read {}: {e}", certificate.display())))?;
    let cert = Certificate::parse(&text).map_err(|e| usage(format!("{}: {e}", certificate.display())))?;
    certify(&c, &cert).map_err(|e| usage(format!("{}: {e}", certificate.display())))
}

/// Bounded search up to `bound` transitions; writes the witness when one is found.
pub fn run_bmc(circuit: &Path, bound: usize, witness: Option<&Path>) -> Result<Option<Trace>> {
    let c = read_circuit(circuit)?;
    let trace = bmc(&c, bound);
    if let (Some(t), Some(p)) = (&trace, witness) {
        write_file(p, &write_witness(&c, t))?;
    }
    Ok(trace)
}
